"""Tools for segmenting, aligning and geolocating two-edition encyclopedia facsimiles."""

__version__ = "0.1.0"
