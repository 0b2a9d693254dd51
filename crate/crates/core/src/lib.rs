//! Qudit stabilizer codes in local-dimension-invariant form.
//!
//! A code over `Z_q` is brought to the canonical form `(I_k X_2 | Z_1 Z_2)`,
//! then corrected so its rows commute exactly over the integers. The result
//! is a valid stabilizer code at every prime local dimension. The crate also
//! computes the cutoffs that govern when the distance survives, brute-forces
//! distances, and checks codespaces by dense simulation.
//!
//! ```
//! use ldi::{embed, is_invariant, StabilizerCode};
//!
//! // <XX, ZZ> is a qubit code only: the rows have product 2
//! let bell = StabilizerCode::from_letters(2, &["XX", "ZZ"])?;
//! assert!(!is_invariant(&bell.generators().to_integer()));
//!
//! let inv = embed(&bell)?;
//! assert!(is_invariant(inv.matrix()));
//! assert!(inv.instantiate(3)?.validate().valid);
//! # Ok::<(), ldi::Error>(())
//! ```

pub mod arith;
pub mod code;
pub mod distance;
pub mod embedding;
pub mod error;
pub mod exact;
pub mod exact_int;
pub mod io;
pub mod logical;
pub mod modp;
pub mod state;
pub mod symplectic;

pub use code::{is_invariant, standard_form, CanonicalForm, CodeParameters, StabilizerCode, ValidationReport};
pub use distance::{
    classify, distance, distance_of_matrix, enumerate_undetectable, integer_distance, DistanceMode, DistanceResult,
    ErrorVerdict, IntegerDistanceResult, Verdict,
};
pub use embedding::{
    bound_b, commutator_matrix, embed, embed_css, instantiate, is_css, lower_correction, p_double_star, p_star,
    p_star_for_dstar, EmbeddingReport, Frame, InvariantCode, PDoubleStar,
};
pub use error::{Error, Result};
pub use exact_int::ExactInt;
pub use io::{parse_pauli_string, CodeFile};
pub use logical::{invariant_logicals, logical_operators, InvariantLogicals, LogicalSet};
pub use state::{bell_codeword, codespace_dimension, lift, verify_stabilized, CodespaceCertificate, DenseOperator};
pub use symplectic::{
    phi_decode, phi_encode, phi_encode_integer, symplectic_product, ElementaryOp, Modulus, SymplecticMatrix,
    SymplecticVector, Transcript,
};
