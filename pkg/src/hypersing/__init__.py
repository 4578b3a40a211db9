"""Invariants and de Rham cohomology of isolated hypersurface singularities, computed exactly."""
