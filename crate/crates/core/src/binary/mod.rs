//! Bit strings, truth tables, characteristic encodings and GF(2) solving.

mod bitstring;
mod characteristic;
mod function;
mod gf2;

pub use bitstring::BitString;
pub use characteristic::{
    characteristic_of_function, characteristic_of_gate, Characteristic, Gate,
};
pub use function::{find_period, FunctionTable, PeriodKind, PeriodReport};
pub use gf2::{solve_period, Gf2Basis, PeriodSolution};
