//! Library surface of the `sg-galois` command-line tool: the PSG file
//! schema and the report shapes, shared with the integration tests.

pub mod formats;
