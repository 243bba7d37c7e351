"""Test package for the almost-golomb CLI and library."""
