# Ideal-theoretic analysis package
