"""Character varieties, subgroup censuses and MIC-POVM checks for finitely presented groups."""

__version__ = "0.1.0"
