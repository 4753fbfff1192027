"""alm-workbench: finite AL-monoids as operation tables, with their ideals, congruences and spectra."""

__version__ = "0.1.0"
