# Metric Lie n-Algebra Toolkit
