# Exact rational linear algebra package
