//! Exact symbolic realization of quantum generalized Verma modules for
//! U_q(sl_{n+m}) by quantum differential operators, with mechanical
//! verification of the defining identities and of the classical limit
//! q -> 1 against an independent enveloping-algebra oracle.

pub mod matrix;
pub mod oracle;
pub mod pmodule;
pub mod qcoeff;
pub mod qcoordinate;
pub mod qweyl;
pub mod realization;
pub mod uqalg;
pub mod verify;
