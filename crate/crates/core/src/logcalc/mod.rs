//! Logarithmic Cartan calculus on a chart: fields, forms, `d`, wedge,
//! contraction, Lie derivative, residues and symplectic data.

mod chart;
mod field;
mod form;
mod residue;
mod symplectic;

pub use chart::{Arena, Chart, VarContext};
pub use field::LogVectorField;
pub use form::{cell_indices, wedge_sign, Cell, LogForm};
pub use residue::{res_const, residue, stratum_residues, Residues};
pub use symplectic::{assemble_symplectic, ce_differential, Frame, FrameKind, SymplecticData};
