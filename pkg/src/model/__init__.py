# Hamiltonian and secular-quartic package
