# Closed-form physical-domain package
