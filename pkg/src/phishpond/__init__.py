"""phishpond: an anti-phishing education game with an analyzable core."""

__version__ = "0.1.0"
