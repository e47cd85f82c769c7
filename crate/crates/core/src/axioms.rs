//! Exact verification of the composition-algebra axioms.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraKind, Amplitude};
use crate::scalar::{Rational, Scalar};

/// Random samples used by [`verify_axioms`].
pub const DEFAULT_SAMPLES: usize = 1000;
/// Seed used by [`verify_axioms`].
pub const DEFAULT_SEED: u64 = 0x00C0_FFEE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Unitality,
    Involution,
    AntiIsomorphism,
    NormIsReal,
    TraceIsReal,
    ConjugationPreservesNorm,
    Composition,
    Homogeneity,
    TraceMatchesBilinear,
    LeftAlternative,
    RightAlternative,
    Associativity,
    Nondegeneracy,
    NoAbsoluteZeroDivisors,
}

impl Axiom {
    pub const ALL: [Axiom; 14] = [
        Axiom::Unitality,
        Axiom::Involution,
        Axiom::AntiIsomorphism,
        Axiom::NormIsReal,
        Axiom::TraceIsReal,
        Axiom::ConjugationPreservesNorm,
        Axiom::Composition,
        Axiom::Homogeneity,
        Axiom::TraceMatchesBilinear,
        Axiom::LeftAlternative,
        Axiom::RightAlternative,
        Axiom::Associativity,
        Axiom::Nondegeneracy,
        Axiom::NoAbsoluteZeroDivisors,
    ];

    /// Axioms every composition algebra satisfies.
    pub const COMPOSITION: [Axiom; 13] = [
        Axiom::Unitality,
        Axiom::Involution,
        Axiom::AntiIsomorphism,
        Axiom::NormIsReal,
        Axiom::TraceIsReal,
        Axiom::ConjugationPreservesNorm,
        Axiom::Composition,
        Axiom::Homogeneity,
        Axiom::TraceMatchesBilinear,
        Axiom::LeftAlternative,
        Axiom::RightAlternative,
        Axiom::Nondegeneracy,
        Axiom::NoAbsoluteZeroDivisors,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Unitality => "unitality",
            Axiom::Involution => "involution",
            Axiom::AntiIsomorphism => "anti_isomorphism",
            Axiom::NormIsReal => "norm_is_real",
            Axiom::TraceIsReal => "trace_is_real",
            Axiom::ConjugationPreservesNorm => "conjugation_preserves_norm",
            Axiom::Composition => "composition",
            Axiom::Homogeneity => "homogeneity",
            Axiom::TraceMatchesBilinear => "trace_matches_bilinear",
            Axiom::LeftAlternative => "left_alternative",
            Axiom::RightAlternative => "right_alternative",
            Axiom::Associativity => "associativity",
            Axiom::Nondegeneracy => "nondegeneracy",
            Axiom::NoAbsoluteZeroDivisors => "no_absolute_zero_divisors",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub pass: bool,
    /// First counterexample found, if any.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub kind: AlgebraKind,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn get(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is checked")
    }

    pub fn passes(&self, axiom: Axiom) -> bool {
        self.get(axiom).pass
    }

    pub fn is_composition_algebra(&self) -> bool {
        Axiom::COMPOSITION.iter().all(|a| self.passes(*a))
    }

    pub fn is_associative_composition_algebra(&self) -> bool {
        self.is_composition_algebra() && self.passes(Axiom::Associativity)
    }
}

type Q = Amplitude<Rational>;

fn label(a: &Q) -> String {
    let nonzero: Vec<_> = a
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if let [(i, c)] = nonzero[..] {
        if c.is_one() {
            return format!("e{i}");
        }
        if (-c.clone()).is_one() {
            return format!("-e{i}");
        }
    }
    format!("{a}")
}

/// Records the first failure per axiom.
struct Recorder {
    witness: [Option<String>; 14],
}

impl Recorder {
    fn fail(&mut self, axiom: Axiom, w: impl FnOnce() -> String) {
        let slot = &mut self.witness[axiom as usize];
        if slot.is_none() {
            *slot = Some(w());
        }
    }

    fn failed(&self, axiom: Axiom) -> bool {
        self.witness[axiom as usize].is_some()
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=9))
}

fn random_amplitude(kind: AlgebraKind, rng: &mut ChaCha8Rng) -> Q {
    loop {
        let a = Amplitude::new(
            kind,
            (0..kind.dim()).map(|_| random_rational(rng)).collect(),
        )
        .unwrap();
        if !a.is_zero() {
            return a;
        }
    }
}

/// Runs [`verify_axioms_with`] with the default sample count and seed.
pub fn verify_axioms(alg: &Algebra) -> AxiomReport {
    verify_axioms_with(alg, DEFAULT_SAMPLES, DEFAULT_SEED)
}

/// Checks every [`Axiom`] exactly: exhaustively over basis elements (pairs,
/// triples) and over `samples` random rational triples.
pub fn verify_axioms_with(alg: &Algebra, samples: usize, seed: u64) -> AxiomReport {
    let kind = alg.kind();
    let n = alg.dim();
    let mut rec = Recorder {
        witness: Default::default(),
    };
    let basis: Vec<Q> = (0..n).map(|r| Amplitude::basis(kind, r)).collect();
    let mul = |a: &Q, b: &Q| alg.mul(a, b).expect("same algebra");
    let qf = |a: &Q| -> Option<Rational> { alg.quadratic_form(a).ok() };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples: Vec<(Q, Q, Q)> = Vec::with_capacity(n * n * n + samples);
    for x in &basis {
        for y in &basis {
            for z in &basis {
                triples.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    for _ in 0..samples {
        let x = random_amplitude(kind, &mut rng);
        let y = random_amplitude(kind, &mut rng);
        let z = random_amplitude(kind, &mut rng);
        triples.push((x, y, z));
    }

    let one = Amplitude::<Rational>::one(kind);
    for (x, y, z) in &triples {
        if mul(&one, x) != *x || mul(x, &one) != *x {
            rec.fail(Axiom::Unitality, || {
                format!("1*{0} or {0}*1 differs from {0}", label(x))
            });
        }
        if x.conj().conj() != *x {
            rec.fail(Axiom::Involution, || {
                format!("conj(conj({})) differs", label(x))
            });
        }
        let xy = mul(x, y);
        if xy.conj() != mul(&y.conj(), &x.conj()) {
            rec.fail(Axiom::AntiIsomorphism, || {
                format!("conj({0}*{1}) != conj({1})*conj({0})", label(x), label(y))
            });
        }
        let qx = qf(x);
        if qx.is_none() {
            rec.fail(Axiom::NormIsReal, || {
                format!("{0}*conj({0}) is not real", label(x))
            });
        }
        if !alg.add(x, &x.conj()).expect("same algebra").is_scalar() {
            rec.fail(Axiom::TraceIsReal, || {
                format!("{0}+conj({0}) is not real", label(x))
            });
        }
        if qf(&x.conj()) != qx {
            rec.fail(Axiom::ConjugationPreservesNorm, || {
                format!("Q(conj({0})) != Q({0})", label(x))
            });
        }
        match (qf(&xy), qx.clone(), qf(y)) {
            (Some(a), Some(b), Some(c)) if a == b.clone() * c.clone() => {}
            _ => rec.fail(Axiom::Composition, || {
                format!("Q({0}*{1}) != Q({0})Q({1})", label(x), label(y))
            }),
        }
        let lambda = z.real_part().clone() + Rational::from_ratio(1, 7);
        match (qf(&x.scale(&lambda)), qx.clone()) {
            (Some(a), Some(b)) if a == lambda.clone() * lambda.clone() * b.clone() => {}
            _ => rec.fail(Axiom::Homogeneity, || {
                format!("Q({lambda}*{0}) != {lambda}^2 Q({0})", label(x))
            }),
        }
        match (alg.trace_form(x), alg.bilinear_form(x, &one)) {
            (Ok(t), Ok(b)) if t == b => {}
            _ => rec.fail(Axiom::TraceMatchesBilinear, || {
                format!("T({0}) != B({0}, 1)", label(x))
            }),
        }
        if !rec.failed(Axiom::LeftAlternative) && mul(x, &xy) != mul(&mul(x, x), y) {
            rec.fail(Axiom::LeftAlternative, || {
                format!("{0}*({0}*{1}) != ({0}*{0})*{1}", label(x), label(y))
            });
        }
        if !rec.failed(Axiom::RightAlternative) && mul(&mul(y, x), x) != mul(y, &mul(x, x)) {
            rec.fail(Axiom::RightAlternative, || {
                format!("({1}*{0})*{0} != {1}*({0}*{0})", label(x), label(y))
            });
        }
        if !rec.failed(Axiom::Associativity) {
            let l = mul(&xy, z);
            let r = mul(x, &mul(y, z));
            if l != r {
                rec.fail(Axiom::Associativity, || {
                    format!(
                        "({0}*{1})*{2} = {3} but {0}*({1}*{2}) = {4}",
                        label(x),
                        label(y),
                        label(z),
                        label(&l),
                        label(&r)
                    )
                });
            }
        }
    }
    // Linearised alternativity over basis pairs: x(yz)+y(xz) = (xy)z+(yx)z.
    for x in &basis {
        for y in &basis {
            for z in &basis {
                let l = mul(x, &mul(y, z)).add(&mul(y, &mul(x, z))).unwrap();
                let r = mul(&mul(x, y), z).add(&mul(&mul(y, x), z)).unwrap();
                if l != r {
                    rec.fail(Axiom::LeftAlternative, || {
                        format!(
                            "linearised law fails on {}, {}, {}",
                            label(x),
                            label(y),
                            label(z)
                        )
                    });
                }
            }
        }
    }

    if alg.gram_determinant().is_zero() {
        rec.fail(Axiom::Nondegeneracy, || {
            String::from("Gram determinant of B vanishes")
        });
    }

    // (c a) c is linear in a, so c is an absolute zero divisor iff it kills every basis element.
    let mut candidates: Vec<Q> = basis.clone();
    for r in 0..n {
        for s in r + 1..n {
            let (qr, qs) = (
                qf(&basis[r]).expect("basis norm"),
                qf(&basis[s]).expect("basis norm"),
            );
            if qr == -qs.clone() {
                candidates.push(basis[r].add(&basis[s]).unwrap());
                candidates.push(basis[r].sub(&basis[s]).unwrap());
            }
        }
    }
    candidates.extend(triples.iter().skip(n * n * n).map(|t| t.0.clone()));
    for c in &candidates {
        if basis.iter().all(|e| mul(&mul(c, e), c).is_zero()) {
            rec.fail(Axiom::NoAbsoluteZeroDivisors, || {
                format!("(c*a)*c = 0 for all a with c = {}", label(c))
            });
        }
    }

    AxiomReport {
        kind,
        checks: Axiom::ALL
            .iter()
            .map(|a| AxiomCheck {
                axiom: *a,
                pass: !rec.failed(*a),
                witness: rec.witness[*a as usize].clone(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternions_pass_everything() {
        let r = verify_axioms_with(&Algebra::new(AlgebraKind::H), 50, 1);
        assert!(r.is_associative_composition_algebra(), "{r:?}");
    }

    #[test]
    fn octonions_fail_only_associativity() {
        let r = verify_axioms_with(&Algebra::new(AlgebraKind::O), 20, 1);
        assert!(r.is_composition_algebra(), "{r:?}");
        let assoc = r.get(Axiom::Associativity);
        assert!(!assoc.pass);
        assert!(assoc.witness.as_deref().unwrap().starts_with("(e1*e2)*e4"));
    }
}
