//! Determinant special solutions: Laguerre tau functions for dP_II and
//! q-Airy determinants for qP_II.

mod laguerre;
mod qairy;

pub use laguerre::{
    dp2_rational_solution, dp2_table_row, laguerre, tau, tau_cofactor, taucond_check, Dp2TableRow,
    LaguerreTau, TauCond,
};
pub use qairy::{qairy_P, qairy_coeff, qairy_P_expanded, qairy_w, qp2_solution, QAirySolution};
