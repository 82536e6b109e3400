//! GF(2) chain complexes, mapping cones and lattice-surgery gadgets for
//! hypergraph product codes.

pub mod chainmap;
pub mod cheeger;
pub mod complex;
pub mod distance;
pub mod error;
pub mod gadget;
pub mod gf2;
pub mod io;
pub mod surgery;
pub mod toric;

pub use chainmap::{ChainMap, ConeComplex, DeformedCssCode};
pub use complex::{Block, ChainComplex};
pub use distance::{Distance, DistanceBound, SearchConfig, Strategy, Verdict};
pub use error::{Error, Result};
pub use gadget::{Family, GadgetOptions, GadgetReport, Mode, SurgeryGadget};
pub use gf2::{BitMatrix, BitVec};
pub use surgery::{build_hgp, canonical_basis, HgpCode, Orientation, SurgerySequence};
