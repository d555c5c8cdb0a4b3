"""Content-element extraction toolkit for business documents."""

__version__ = "0.1.0"
