//! Dirichlet problems on balls and slabs, universal-bound measurements, the
//! Lane-Emden h-calculus, decay scans and explicit unbounded profiles.

pub mod ball;
pub mod counter;
pub mod decay;
pub mod hcalc;
pub mod report;

pub use ball::{shooting_center, shooting_guess, solve_ball, BallOptions, BvpSolution, Guess};
pub use counter::{proportional_counterexample, CounterProfile, Counterexample};
pub use decay::{decay_scan, DecayRow};
pub use hcalc::{bound_exponents, BoundExponents, HCalculus, HSummary, ASYMPTOTIC_WINDOW};
pub use report::{bound_report, domain_sup, BoundMode, BoundReport, DomainSup};
