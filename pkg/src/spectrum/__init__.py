# Eigenvalue oracle package
