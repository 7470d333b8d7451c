# Newton polyhedra, dual diagrams and exponent bounds
