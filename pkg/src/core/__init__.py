# Lie n-algebra data model and validators
