//! The finite character group of the depth-one torus points and the
//! transporter counts `#{w in W_e^F : w(chi) = chi'}`.
//!
//! The group is `X / (F - 1)X` with `X` the coweight lattice and
//! `F = q (c sigma)`, in invariant-factor coordinates. A character is a
//! residue tuple `(a_1 mod d_1, ...)`, sending the class with coordinates
//! `x` to `exp(2 pi i sum a_j x_j / d_j)`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::rootsys::WeylElement;
use crate::smith::Cokernel;
use crate::twisted::{coweight_matrix_of, FixedPointData, TwistedSetup};
use crate::verifier::LemmaReport;

pub const MODEL_NOTE: &str = "depth one: the torus points are modeled by X_*/(F - 1)X_* with F = q (c sigma) on the coweight lattice";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TorusCharacter {
    /// Invariant factors of the group the character belongs to.
    pub factors: Vec<i64>,
    pub components: Vec<i64>,
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().zip(&self.factors).map(|(a, d)| format!("{a} mod {d}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug)]
pub struct CharacterGroup {
    cokernel: Cokernel,
    q: i64,
    /// Lattice action of `w^-1`, for the duality check.
    lattice_inv: BTreeMap<WeylElement, Matrix<i64>>,
    /// `w -> K` with `(w chi)_j = sum_i a_i K[i][j] mod d_j`.
    action_cache: BTreeMap<WeylElement, Vec<Vec<i64>>>,
}

/// `coker(q (c sigma) - 1)` on the coweight lattice.
pub fn character_group(setup: &TwistedSetup, q: i64) -> Result<CharacterGroup, Error> {
    if q < 2 {
        return Err(Error::Precondition(format!("q = {q} must be at least 2")));
    }
    let a = setup.csigma_coweight_matrix();
    let n = a.rows();
    let f_minus_one = a.scale(&q).sub(&Matrix::identity(n));
    // q (c sigma) has all eigenvalues of absolute value q > 1.
    let cokernel = Cokernel::new(&f_minus_one).ok_or_else(|| Error::Internal("q (c sigma) - 1 is singular".into()))?;
    Ok(CharacterGroup { cokernel, q, lattice_inv: BTreeMap::new(), action_cache: BTreeMap::new() })
}

impl CharacterGroup {
    pub fn invariant_factors(&self) -> &[i64] {
        self.cokernel.invariant_factors()
    }

    pub fn order(&self) -> u128 {
        self.cokernel.order()
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn cokernel(&self) -> &Cokernel {
        &self.cokernel
    }

    pub fn character(&self, residues: &[i64]) -> Result<TorusCharacter, Error> {
        let factors = self.invariant_factors();
        if residues.len() != factors.len() {
            return Err(Error::InvalidCharacter(format!(
                "{} residues given for invariant factors {:?}",
                residues.len(),
                factors
            )));
        }
        if let Some((a, d)) = residues.iter().zip(factors).find(|(a, d)| **a < 0 || *a >= *d) {
            return Err(Error::InvalidCharacter(format!("residue {a} is not in 0..{d}")));
        }
        Ok(TorusCharacter { factors: factors.to_vec(), components: residues.to_vec() })
    }

    pub fn trivial(&self) -> TorusCharacter {
        TorusCharacter { factors: self.invariant_factors().to_vec(), components: vec![0; self.invariant_factors().len()] }
    }

    /// Every character, in lexicographic order of residues.
    pub fn characters(&self) -> Vec<TorusCharacter> {
        self.cokernel
            .elements()
            .into_iter()
            .map(|components| TorusCharacter { factors: self.invariant_factors().to_vec(), components })
            .collect()
    }

    fn owns(&self, chi: &TorusCharacter) -> bool {
        chi.factors == self.invariant_factors()
    }

    /// Caches the action of each `w`, which must commute with `c sigma`.
    pub fn register(&mut self, setup: &TwistedSetup, elements: &[WeylElement]) -> Result<(), Error> {
        let factors = self.invariant_factors().to_vec();
        for w in elements {
            if self.action_cache.contains_key(w) {
                continue;
            }
            let inv = coweight_matrix_of(setup.datum(), w.inverse().perm());
            let t_inv = self.cokernel.transport(&inv);
            let k = factors.len();
            let mut coeff = vec![vec![0i64; k]; k];
            for i in 0..k {
                for j in 0..k {
                    let num = factors[j] as i128 * t_inv[(i, j)];
                    let (quot, rem) = num.div_rem(&(factors[i] as i128));
                    if rem != 0 {
                        return Err(Error::Internal(format!("{:?} does not preserve (F - 1)X", w.perm())));
                    }
                    coeff[i][j] = quot.rem_euclid(factors[j] as i128) as i64;
                }
            }
            self.lattice_inv.insert(w.clone(), inv);
            self.action_cache.insert(w.clone(), coeff);
        }
        Ok(())
    }

    fn action(&self, w: &WeylElement) -> Result<&Vec<Vec<i64>>, Error> {
        self.action_cache.get(w).ok_or_else(|| Error::Precondition("action of w was not registered".into()))
    }

    /// `w chi`, defined by `(w chi)(x) = chi(w^-1 x)`.
    pub fn act(&self, w: &WeylElement, chi: &TorusCharacter) -> Result<TorusCharacter, Error> {
        if !self.owns(chi) {
            return Err(Error::MismatchedGroups);
        }
        let k = self.action(w)?;
        let d = self.invariant_factors();
        let components = (0..d.len())
            .map(|j| {
                let s: i128 = (0..d.len()).map(|i| chi.components[i] as i128 * k[i][j] as i128).sum();
                s.rem_euclid(d[j] as i128) as i64
            })
            .collect();
        Ok(TorusCharacter { factors: d.to_vec(), components })
    }

    /// `chi(x)` as `t` with value `exp(2 pi i t / e)`, `e` the exponent.
    pub fn evaluate(&self, chi: &TorusCharacter, class: &[i64]) -> i64 {
        let d = self.invariant_factors();
        let e = d.last().copied().unwrap_or(1) as i128;
        let t: i128 = chi.components.iter().zip(class).zip(d).map(|((&a, &x), &di)| a as i128 * x as i128 * (e / di as i128)).sum();
        t.rem_euclid(e) as i64
    }

    /// Checks `(w chi)(x) = chi(w^-1 x)` on the generators `x`, computing
    /// the right side through the lattice.
    pub fn duality_holds(&self, w: &WeylElement, chi: &TorusCharacter) -> Result<bool, Error> {
        let lhs = self.act(w, chi)?;
        let inv = self.lattice_inv.get(w).ok_or_else(|| Error::Precondition("action of w was not registered".into()))?;
        let k = self.invariant_factors().len();
        for j in 0..k {
            let mut gen = vec![0; k];
            gen[j] = 1;
            let x = self.cokernel.representative(&gen);
            let moved = self.cokernel.class_of(&inv.mul_vec(&x));
            if self.evaluate(&lhs, &gen) != self.evaluate(chi, &moved) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `W_e^F`: the `w` in `W_e` commuting with `c sigma`, sorted.
pub fn fixed_subgroup(setup: &TwistedSetup, fp: &FixedPointData) -> Vec<WeylElement> {
    let x = setup.csigma();
    let mut out: Vec<WeylElement> = fp.w_e.elements().into_iter().filter(|w| &x.conjugate(w, setup.sigma()) == w).collect();
    out.sort();
    out
}

/// `#{w in fixed : w chi = chi'}`.
pub fn count_transporter(
    chi: &TorusCharacter,
    chi2: &TorusCharacter,
    group: &CharacterGroup,
    fixed: &[WeylElement],
) -> Result<u64, Error> {
    if !group.owns(chi) || !group.owns(chi2) {
        return Err(Error::MismatchedGroups);
    }
    let mut n = 0;
    for w in fixed {
        if &group.act(w, chi)? == chi2 {
            n += 1;
        }
    }
    Ok(n)
}

/// Whether the stabilizer of `chi` in `fixed` is trivial.
pub fn is_regular(chi: &TorusCharacter, group: &CharacterGroup, fixed: &[WeylElement]) -> Result<bool, Error> {
    Ok(count_transporter(chi, chi, group, fixed)? == 1)
}

/// The full row `chi' -> count(chi, chi')`, omitting zero entries.
pub fn transporter_row(
    chi: &TorusCharacter,
    group: &CharacterGroup,
    fixed: &[WeylElement],
) -> Result<BTreeMap<TorusCharacter, u64>, Error> {
    let mut row = BTreeMap::new();
    for w in fixed {
        *row.entry(group.act(w, chi)?).or_insert(0) += 1;
    }
    Ok(row)
}

/// A setup with its character group and `W_e^F`, actions registered.
#[derive(Clone, Debug)]
pub struct MultiplicityData {
    pub group: CharacterGroup,
    pub fixed: Vec<WeylElement>,
}

pub fn multiplicity_data(setup: &TwistedSetup, fp: &FixedPointData, q: i64) -> Result<MultiplicityData, Error> {
    let mut group = character_group(setup, q)?;
    let fixed = fixed_subgroup(setup, fp);
    group.register(setup, &fixed)?;
    Ok(MultiplicityData { group, fixed })
}

/// Property checks over every character of a group of order at most
/// `max_order`: the row-sum identity, orbit-stabilizer, the action being a
/// group action, and duality on generators. Larger groups are counted as
/// truncated.
pub fn verify_counting(setup: &TwistedSetup, fp: &FixedPointData, q: i64, max_order: u128) -> Result<LemmaReport, Error> {
    let mut rep = LemmaReport::new("multiplicity_counting");
    rep.note(MODEL_NOTE);
    let data = multiplicity_data(setup, fp, q)?;
    let (group, fixed) = (&data.group, &data.fixed);
    if group.order() > max_order {
        rep.truncated += 1;
        return Ok(rep);
    }
    let tag = format!("{setup} q={q}");
    let size = fixed.len() as u64;
    let mut index: BTreeMap<&WeylElement, usize> = BTreeMap::new();
    for (k, w) in fixed.iter().enumerate() {
        index.insert(w, k);
    }
    let identity = setup.datum().identity();
    for chi in group.characters() {
        let row = transporter_row(&chi, group, fixed)?;
        let total: u64 = row.values().sum();
        let stab = row.get(&chi).copied().unwrap_or(0);
        let orbit = row.len() as u64;
        rep.check(total == size && stab * orbit == size && row.values().all(|&c| c == stab), &tag, || {
            format!("chi = {chi}: row sum {total}, |W_e^F| = {size}, stabilizer {stab}, orbit {orbit}")
        });
        rep.check(group.act(&identity, &chi)? == chi, &tag, || format!("1 moves chi = {chi}"));
    }
    // (vw) chi = v (w chi) and duality, on each basis character.
    let k = group.invariant_factors().len();
    for j in 0..k {
        let mut a = vec![0; k];
        a[j] = 1;
        let chi = group.character(&a)?;
        for v in fixed {
            rep.check(group.duality_holds(v, &chi)?, &tag, || format!("duality fails for chi = {chi}"));
            for w in fixed {
                let vw = v.mul(w);
                if !index.contains_key(&vw) {
                    rep.check(false, &tag, || "W_e^F is not closed under products".into());
                    continue;
                }
                let lhs = group.act(&vw, &chi)?;
                let rhs = group.act(v, &group.act(w, &chi)?)?;
                rep.check(lhs == rhs, &tag, || format!("action is not multiplicative on chi = {chi}"));
            }
        }
    }
    Ok(rep)
}
