"""Braided open books: band words, Rampichini diagrams, cacti, ladders and polynomial loops."""

__version__ = "0.1.0"
