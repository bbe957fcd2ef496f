# Utilities package








