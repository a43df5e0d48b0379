//! Meshfree collocation solvers: boundary knot and boundary particle
//! methods, modified Kansa and least-squares collocation, with shared
//! right-hand-side handling and error metrics.
