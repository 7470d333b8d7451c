# Lojasiewicz exponent bounds from Newton polyhedra
