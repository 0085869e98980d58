# Library proper: complexes, maps, face spheres, moves, search and the bridge constructions.
