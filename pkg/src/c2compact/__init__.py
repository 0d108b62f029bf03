"""Exact computations on compactifications of the affine plane."""
