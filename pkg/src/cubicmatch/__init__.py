"""Perfect matchings, joins and odd cuts in bridgeless cubic graphs."""

__version__ = "0.1.0"
