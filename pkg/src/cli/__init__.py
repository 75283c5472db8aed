"""Command-line front end of paramono."""
