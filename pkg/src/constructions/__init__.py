# Builders and double-extension extraction
