//! Library surface of the bench driver: configuration files in [`config`]
//! and command implementations in [`run`].

pub mod config;
pub mod run;
