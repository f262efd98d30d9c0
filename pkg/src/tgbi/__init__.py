"""tgbi - Measure how machine translation handles Korean gender-neutral pronouns."""

__version__ = "0.1.0"
