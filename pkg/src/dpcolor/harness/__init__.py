"""File formats, generators, gadgets, the verification pipeline and the CLI."""
