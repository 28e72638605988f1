//! Chord diagrams, Jacobi diagrams, and the mod-2 machinery connecting them.

mod chord;
mod enumerate;
mod jacobi;

pub use chord::{
    enumerate_chord_diagrams, enumerate_chord_diagrams_unguarded, four_t_relators,
    four_t_relators_unguarded, ChordDiagram, FourTRelator, IntersectionGraph,
};
pub use enumerate::{
    canonical_code as jacobi_canonical_code,
    canonical_code_exhaustive as jacobi_canonical_code_exhaustive, enumerate_jacobi,
    enumerate_jacobi_unguarded, JacobiFilter,
};
pub use jacobi::{wheel, DiagramSumMod2, End, JacobiDiagram};
