//! Length spectra: data model, files, generators and group-element utilities.

pub mod group;
pub mod io;
pub mod model;
pub mod pell;
pub mod synthetic;

pub use group::{conjugation_check, conjugation_check_exact, norm_of, q_polynomial, GroupElement, RationalComplex};
pub use io::{load_spectrum, parse_spectrum, save_spectrum, write_spectrum};
pub use model::{LengthSpectrum, PrimitiveClass, Source, TailModel, NORM_GAP};
pub use pell::{class_number, fundamental_solution, gen_pell};
pub use synthetic::gen_synthetic;
