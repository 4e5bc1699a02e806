//! Milnor invariants of links from planar diagram codes, Whitehead doubling
//! as a diagram operation, and invariant-based triviality certificates.
//!
//! The crate is organized around five layers:
//!
//! - [`diagram`]: parse, validate and query oriented link diagrams given as
//!   PD codes or signed Gauss codes.
//! - [`magnus`]: exact integer arithmetic in truncated non-commutative
//!   power series and the Magnus expansion of group words.
//! - [`milnor`]: Wirtinger presentations, the meridian-reduction fixpoint,
//!   longitude expansions, and the invariants `mu`, `delta`, `mu_bar`.
//! - [`whitehead`]: the Whitehead n-double and the odd-half-twist double as
//!   local surgery on diagram codes.
//! - [`verify`]: executable checks of the doubling identities (vanishing
//!   range, product formulae, Sato-Levine, odd scaling), link-homotopy and
//!   self-delta certificates, and a symbolic replay of the longitude
//!   identity behind the vanishing theorem.
//!
//! The `examples/` directory has one runnable program per capability; the
//! `mubar` binary exposes the same operations as subcommands.

pub mod diagram;
pub mod links;
pub mod milnor;
pub mod whitehead;
pub mod magnus;

pub use diagram::{Crossing, DiagramData, LinkDiagram, PdError, Violation};
pub use magnus::{Alphabet, GroupWord, MagnusSeries, Monomial};
pub use milnor::{MilnorEngine, MilnorValue, MultiIndex, WirtingerPresentation};
pub use whitehead::{DoubleKind, DoubleSpec};
