//! The full group of K Dirichlet characters mod k, built as root-of-unity
//! combinations over the index system.
//!
//! A character is labelled by an exponent tuple (𝔞, 𝔟, 𝔠, 𝔠', …), one
//! exponent per index component; its value at a coprime n is the product
//! of fixed primitive roots of unity raised to exponent·index. Values are
//! taken from per-order unit-root tables rather than by repeated complex
//! multiplication, so |χ(n)| = 1 to machine precision; χ(n) = 0 off the
//! coprime residues.

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::index::{factorize_modulus, index_system, ModulusFactorization};
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

/// The three classes of characters mod k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharacterClass {
    Principal,
    RealNonprincipal,
    Complex,
}

impl fmt::Display for CharacterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CharacterClass::Principal => "principal",
            CharacterClass::RealNonprincipal => "real-nonprincipal",
            CharacterClass::Complex => "complex",
        };
        f.write_str(s)
    }
}

/// A Dirichlet character mod k, immutable after construction.
#[derive(Debug, Clone)]
pub struct Character {
    modulus: Arc<ModulusFactorization>,
    exponents: Vec<u64>,
    /// χ(m) for m = 0..k; index by n mod k.
    values: Vec<Complex64>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.k() == other.k() && self.exponents == other.exponents
    }
}

/// e^{2πi·j/order} for j = 0..order.
fn unit_roots(order: u64) -> Vec<Complex64> {
    (0..order)
        .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / order as f64))
        .collect()
}

/// Index systems (flattened) for every residue mod k; None off the units.
fn index_component_table(f: &ModulusFactorization) -> Vec<Option<Vec<u64>>> {
    (0..f.k())
        .map(|m| {
            if gcd(m, f.k()) == 1 {
                Some(index_system(m, f).unwrap().components())
            } else {
                None
            }
        })
        .collect()
}

fn value_table(
    f: &ModulusFactorization,
    exponents: &[u64],
    components: &[Option<Vec<u64>>],
    roots: &[Vec<Complex64>],
) -> Vec<Complex64> {
    let orders = f.component_orders();
    components
        .iter()
        .map(|sys| match sys {
            None => Complex64::new(0.0, 0.0),
            Some(idx) => {
                let mut v = Complex64::new(1.0, 0.0);
                for i in 0..orders.len() {
                    let j = exponents[i] * idx[i] % orders[i];
                    v *= roots[i][j as usize];
                }
                v
            }
        })
        .collect()
}

impl Character {
    /// Build the character with the given exponent tuple (aligned with
    /// `ModulusFactorization::component_orders`).
    pub fn new(f: &ModulusFactorization, exponents: Vec<u64>) -> Result<Character> {
        let orders = f.component_orders();
        if exponents.len() != orders.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} exponents for k = {}, got {}",
                orders.len(),
                f.k(),
                exponents.len()
            )));
        }
        for (e, d) in exponents.iter().zip(&orders) {
            if e >= d {
                return Err(Error::InvalidArgument(format!(
                    "exponent {e} out of range for component of order {d}"
                )));
            }
        }
        let components = index_component_table(f);
        let roots: Vec<Vec<Complex64>> = orders.iter().map(|&d| unit_roots(d)).collect();
        let values = value_table(f, &exponents, &components, &roots);
        Ok(Character {
            modulus: Arc::new(f.clone()),
            exponents,
            values,
        })
    }

    pub fn k(&self) -> u64 {
        self.modulus.k()
    }

    pub fn modulus(&self) -> &ModulusFactorization {
        &self.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// χ(n): unit-modulus for gcd(n, k) = 1, exactly 0 otherwise.
    /// Depends only on n mod k.
    pub fn eval(&self, n: u64) -> Complex64 {
        self.values[(n % self.k()) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn classify(&self) -> CharacterClass {
        if self.is_principal() {
            return CharacterClass::Principal;
        }
        // A component root e^{2πi e/d} is real iff e = 0 or 2e = d.
        let orders = self.modulus.component_orders();
        let all_real = self
            .exponents
            .iter()
            .zip(&orders)
            .all(|(&e, &d)| e == 0 || 2 * e == d);
        if all_real {
            CharacterClass::RealNonprincipal
        } else {
            CharacterClass::Complex
        }
    }

    /// The conjugate character: exponents negated mod the component orders.
    pub fn conjugate(&self) -> Character {
        let orders = self.modulus.component_orders();
        let exponents = self
            .exponents
            .iter()
            .zip(&orders)
            .map(|(&e, &d)| (d - e) % d)
            .collect();
        Character {
            modulus: Arc::clone(&self.modulus),
            exponents,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Stable textual label, e.g. `chi[k=24;a=1,b=0,c=1]`.
    pub fn label(&self) -> String {
        let names = self.modulus.component_names();
        let parts: Vec<String> = names
            .iter()
            .zip(&self.exponents)
            .map(|(name, e)| format!("{name}={e}"))
            .collect();
        format!("chi[k={};{}]", self.k(), parts.join(","))
    }

    /// Parse a label produced by `label`.
    pub fn from_label(label: &str) -> Result<Character> {
        let bad = || Error::InvalidLabel(label.to_string());
        let inner = label
            .strip_prefix("chi[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut fields = inner.split(';');
        let k_field = fields.next().ok_or_else(bad)?;
        let k: u64 = k_field
            .strip_prefix("k=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(bad)?;
        let f = factorize_modulus(k)?;
        let names = f.component_names();
        let mut exponents = vec![0u64; names.len()];
        let rest = fields.next().unwrap_or("");
        if fields.next().is_some() {
            return Err(bad());
        }
        if !rest.is_empty() {
            for part in rest.split(',') {
                let (name, value) = part.split_once('=').ok_or_else(bad)?;
                let pos = names.iter().position(|n| n == name).ok_or_else(bad)?;
                exponents[pos] = value.parse().map_err(|_| bad())?;
            }
        }
        Character::new(&f, exponents)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All K characters mod k, exponent tuples in lexicographic order, so the
/// principal character comes first.
pub fn enumerate_characters(f: &ModulusFactorization) -> Vec<Character> {
    let orders = f.component_orders();
    let components = index_component_table(f);
    let roots: Vec<Vec<Complex64>> = orders.iter().map(|&d| unit_roots(d)).collect();
    let modulus = Arc::new(f.clone());
    let mut out = Vec::with_capacity(f.group_order() as usize);
    let mut exponents = vec![0u64; orders.len()];
    loop {
        out.push(Character {
            modulus: Arc::clone(&modulus),
            exponents: exponents.clone(),
            values: value_table(f, &exponents, &components, &roots),
        });
        // mixed-radix increment, last component fastest
        let mut i = orders.len();
        loop {
            if i == 0 {
                debug_assert_eq!(out.len() as u64, f.group_order());
                return out;
            }
            i -= 1;
            exponents[i] += 1;
            if exponents[i] < orders[i] {
                break;
            }
            exponents[i] = 0;
        }
    }
}

/// Σ_χ χ(n)·conj(χ(m)) over all K characters mod k: K when n ≡ m (mod k),
/// 0 otherwise. Fails unless gcd(m, k) = 1.
pub fn orthogonality_sum(f: &ModulusFactorization, n: u64, m: u64) -> Result<i64> {
    orthogonality_sum_over(&enumerate_characters(f), n, m)
}

/// Same as `orthogonality_sum`, over a pre-enumerated character group.
pub fn orthogonality_sum_over(chars: &[Character], n: u64, m: u64) -> Result<i64> {
    let k = chars
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty character group".into()))?
        .k();
    if gcd(m, k) != 1 {
        return Err(Error::NotCoprime { n: m, modulus: k });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for chi in chars {
        sum += chi.eval(n) * chi.eval(m).conj();
    }
    let rounded = sum.re.round();
    let residual = sum.im.abs().max((sum.re - rounded).abs());
    if residual >= 1e-9 {
        return Err(Error::PrecisionFailure {
            residual,
            limit: 1e-9,
        });
    }
    Ok(rounded as i64)
}
