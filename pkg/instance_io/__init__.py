"""Instance files: declared models, parser and canonical serializer."""
