"""Almost Golomb sequences: generation, denesting checks and automata."""

__version__ = "0.1.0"
