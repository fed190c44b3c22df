//! Numerical verification toolkit for primes in arithmetic progressions:
//! index systems and Dirichlet characters for arbitrary moduli, L-series
//! evaluated by four independent methods with rigorous truncation bounds,
//! the quadratic-character closed forms and their Pell-type relation, and
//! prime censuses tied back to the character-weighted log L identity.

pub mod arith;
pub mod census;
pub mod characters;
pub mod error;
pub mod index;
pub mod lseries;
pub mod quadratic;
pub mod quadrature;
pub mod verify;

pub use census::{
    ap_identity_check, ap_prime_sum_lhs, census, divergence_probe, sieve, CensusReport,
    IdentityCheck,
};
pub use characters::{
    enumerate_characters, orthogonality_sum, orthogonality_sum_over, Character, CharacterClass,
};
pub use error::{Error, Result};
pub use index::{
    factorize_modulus, index, index_system, index_two_part, primitive_root, IndexSystem,
    ModulusFactorization,
};
pub use lseries::{
    default_rho_grid, dirichlet_series, euler_product, l_one_closed_form_prime, l_one_integral,
    log_l, principal_pole_scan, LValue, Method, PoleScanReport,
};
pub use quadratic::{
    gauss_sum, l_one_quadratic, pell_minus4, quadratic_report, residue_sums, sin_product_ratio,
    PellSolution, QuadraticReport,
};
