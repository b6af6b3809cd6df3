# Parameter-space scanning package
