/**
 * Pixel <-> data mapping, duplicated from the engine for responsive previews.
 *
 * The stored value is always the server's; if a preview disagrees with the
 * engine by more than half a percent of the axis domain, that is a client
 * bug and callers should log it (see assertPreviewAgreement).
 */

import type { AxisSpec } from "./types.js";

const fwd = (axis: AxisSpec, v: number): number =>
  axis.scale === "log10" ? Math.log10(v) : v;

export function project(axis: AxisSpec, value: number): number {
  const [dLoRaw, dHiRaw] = axis.domain;
  const dLo = fwd(axis, dLoRaw);
  const dHi = fwd(axis, dHiRaw);
  const t = (fwd(axis, value) - dLo) / (dHi - dLo);
  const [pLo, pHi] = axis.range_px;
  return pLo + t * (pHi - pLo);
}

export function invert(axis: AxisSpec, px: number): number {
  const [pLo, pHi] = axis.range_px;
  const t = (px - pLo) / (pHi - pLo);
  const dLo = fwd(axis, axis.domain[0]);
  const dHi = fwd(axis, axis.domain[1]);
  const v = dLo + t * (dHi - dLo);
  return axis.scale === "log10" ? Math.pow(10, v) : v;
}

export function domainWidth(axis: AxisSpec): number {
  return axis.domain[1] - axis.domain[0];
}

export function pixelInRange(axis: AxisSpec, px: number): boolean {
  const lo = Math.min(...axis.range_px);
  const hi = Math.max(...axis.range_px);
  return lo <= px && px <= hi;
}

/** Relative tolerance for preview/engine agreement: 0.5% of domain width. */
export const PREVIEW_TOLERANCE = 0.005;

export function previewAgrees(axis: AxisSpec, preview: number, stored: number): boolean {
  return Math.abs(preview - stored) <= PREVIEW_TOLERANCE * domainWidth(axis);
}

export function assertPreviewAgreement(
  axis: AxisSpec,
  preview: number,
  stored: number,
  log: (msg: string) => void = console.error,
): void {
  if (!previewAgrees(axis, preview, stored)) {
    log(
      `client bug: preview ${preview} disagrees with stored ${stored} ` +
        `beyond 0.5% of domain [${axis.domain[0]}, ${axis.domain[1]}]`,
    );
  }
}
