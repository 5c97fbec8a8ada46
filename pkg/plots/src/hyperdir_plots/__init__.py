"""Paper-style figures (SMC heatmaps, bucket lines, complementarity bars)."""

__version__ = "0.1.0"
