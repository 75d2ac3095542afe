//! Dempster-Shafer evidence combination, hypothesis verification against
//! stored knowledge, and a pyramid pipeline that uses both to rank window
//! candidates on building facades.
//!
//! - [`evidence`]: frames, clauses, mass functions, Dempster's rule, belief.
//! - [`oracle`]: brute-force world-set reference used by the tests.
//! - [`knowledge`]: knowledge sources and hypothesis verification.
//! - [`assess`]: step-function feature assessment and belief tables.
//! - [`pyramid`]: image pyramid, edge aggregation, candidates, staged beliefs.
//! - [`io`]: PGM input, TSV reports, PPM overlays.
//! - [`fixtures`]: bundled numeric fixtures (the house-image table and the shutter example).

pub mod assess;
pub mod evidence;
pub mod fixtures;
pub mod io;
pub mod knowledge;
pub mod oracle;
pub mod pyramid;
