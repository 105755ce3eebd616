"""vprkit: visual place recognition pipeline and evaluation toolkit."""

__version__ = "1.0.0"
