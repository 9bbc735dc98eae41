# Weighted deep polynomial approximation package
