"""chartdig: synthetic-data-trained line-chart digitization toolkit."""

__version__ = "0.1.0"
