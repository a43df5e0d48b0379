//! Experiment harness: named benchmark problems, scheme runners, error
//! tables, and convergence studies driven by a JSON configuration.
