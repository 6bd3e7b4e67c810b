//! Poset-diaries over the alphabet {L, X, R} and the big Ramsey degrees of
//! finite partial orders.

pub mod cli;
pub mod coding;
pub mod diaries;
pub mod envelopes;
pub mod posets;
pub mod variants;
pub mod words;
