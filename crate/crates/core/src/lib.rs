//! Coupled Stackelberg games with ambiguous leader commitments.

pub mod game;
pub mod gaps;
pub mod hardness;
pub mod landscape;
pub mod lp;
pub mod random;
pub mod rational;
pub mod responses;
pub mod solvers;

pub use game::{CommitmentKind, CommitmentSet, CoupledGame, FollowerGame, MixedStrategy, TieBreak};
pub use rational::Rational;
