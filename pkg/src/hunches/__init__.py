"""hunches: a collaboration engine for data hunches.

Record personal knowledge about how representative a dataset is, visualize
and curate it as a group, and never mutate the original data while doing so.
"""

__version__ = "0.1.0"
