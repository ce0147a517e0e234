/** Collaboration panel state helpers: pure functions the DOM layer binds to. */

import type { ConsensusDoc, HunchListing } from "./types.js";

/** Banner text while blind mode withholds other people's hunches, else null. */
export function blindModeBanner(listing: HunchListing): string | null {
  if (!listing.blind_mode) return null;
  if (listing.withheld === 0) return "Blind mode is on; you can see all hunches because you contributed.";
  return (
    `Blind mode: ${listing.withheld} hunch${listing.withheld === 1 ? "" : "es"} hidden ` +
    "until you record your own."
  );
}

export function consensusLines(record: ConsensusDoc): string[] {
  const lines: string[] = [`${record.n_hunches} hunch${record.n_hunches === 1 ? "" : "es"}`];
  const { higher, lower } = record.direction_tally;
  if (higher > 0 || lower > 0) lines.push(`direction: ${higher} higher / ${lower} lower`);
  if (record.value_stats) {
    const { median, q1, q3 } = record.value_stats;
    lines.push(`proposed values: median ${fmt(median)} (q1 ${fmt(q1)}, q3 ${fmt(q3)})`);
  }
  if (record.range_overlap) {
    const { intersection, union } = record.range_overlap;
    lines.push(
      intersection
        ? `ranges agree on [${fmt(intersection[0])}, ${fmt(intersection[1])}]`
        : `ranges disagree; union [${fmt(union[0])}, ${fmt(union[1])}]`,
    );
  }
  if (record.mean_assessment !== null) lines.push(`mean trust ${fmt(record.mean_assessment)}/5`);
  return lines;
}

function fmt(x: number): string {
  return Number.isInteger(x) ? String(x) : x.toFixed(2);
}
