"""Command-line surface: argument parsing, tables and support diagrams."""
