//! The associated graded ring `G(I) = ⊕ I^n / I^(n+1)` in coordinates.
//!
//! `G_n` has basis indexed by the monomials standard for `I^(n+1)` but not for
//! `I^n`; the element for `m` is `m - NF_{I^n}(m)`, whose leading monomial is
//! `m`. The class of `g ∈ I^n` is read off `NF_{I^(n+1)}(g)` on those
//! monomials.

use std::sync::Arc;

use crate::error::Result;
use crate::field::Field;
use crate::ideal::Ideal;
use crate::linalg::{Echelon, SparseVec};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::quotient::QuotientSpace;

const NONE: u32 = u32::MAX;

#[derive(Debug)]
pub struct Piece<F: Field> {
    monomials: Vec<Monomial>,
    basis: Vec<Polynomial<F>>,
    monomial_basis: bool,
    /// `R / I^(n+1)`.
    space: Arc<QuotientSpace<F>>,
    /// Position in this piece of each standard monomial of `I^(n+1)`.
    local: Vec<u32>,
}

impl<F: Field> Piece<F> {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Representatives in `I^n` of the basis classes.
    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    fn restrict(&self, v: SparseVec<F>) -> SparseVec<F> {
        let mut out: SparseVec<F> = v
            .into_iter()
            .filter_map(|(i, c)| match self.local[i] {
                NONE => None,
                j => Some((j as usize, c)),
            })
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }
}

/// Lazily extended pieces `G_0, G_1, ...` of the associated graded ring.
#[derive(Debug)]
pub struct GradedRing<F: Field> {
    ideal: Ideal<F>,
    pieces: Vec<Piece<F>>,
}

impl<F: Field> GradedRing<F> {
    pub fn new(ideal: &Ideal<F>) -> Self {
        GradedRing {
            ideal: ideal.clone(),
            pieces: Vec::new(),
        }
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn field(&self) -> F {
        self.ideal.base().field().clone()
    }

    /// `G_n`, building every lower piece first.
    pub fn piece(&mut self, n: usize) -> Result<&Piece<F>> {
        while self.pieces.len() <= n {
            let k = self.pieces.len();
            let piece = self.build(k)?;
            self.pieces.push(piece);
        }
        Ok(&self.pieces[n])
    }

    pub fn dim(&mut self, n: usize) -> Result<usize> {
        Ok(self.piece(n)?.dim())
    }

    fn build(&self, n: usize) -> Result<Piece<F>> {
        let upper = self.ideal.power(n + 1)?;
        let space = upper.quotient_space()?.clone();
        let lower = self.ideal.power(n)?;
        let lower_space = if n == 0 {
            None
        } else {
            Some(lower.quotient_space()?.clone())
        };
        let mut monomials = Vec::new();
        let mut local = vec![NONE; space.dim()];
        for (i, m) in space.monomials().iter().enumerate() {
            let inside = lower_space.as_ref().is_some_and(|s| s.index_of(m).is_some());
            if !inside {
                local[i] = monomials.len() as u32;
                monomials.push(m.clone());
            }
        }
        let monomial_basis = lower_space.as_ref().is_none_or(|s| s.basis().is_monomial());
        let ring = self.ideal.base();
        let one = ring.field().one();
        let basis = monomials
            .iter()
            .map(|m| {
                let mono = Polynomial::monomial(ring, one.clone(), m.clone());
                match (&lower_space, monomial_basis) {
                    (Some(s), false) => {
                        let nf = s.basis().normal_form(&mono)?;
                        mono.checked_sub(&nf)
                    }
                    _ => Ok(mono),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Piece {
            monomials,
            basis,
            monomial_basis,
            space,
            local,
        })
    }

    /// Class in `G_n` of `g ∈ I^n` (membership is the caller's contract).
    pub fn class_of(&mut self, n: usize, g: &Polynomial<F>) -> Result<SparseVec<F>> {
        let piece = self.piece(n)?;
        let v = piece.space.coordinates(g)?;
        Ok(piece.restrict(v))
    }

    /// Rows of multiplication by the initial form of `x ∈ I^s`, from `G_n`
    /// to `G_(n+s)`, one row per basis element of `G_n`.
    pub fn multiplication_rows(&mut self, n: usize, s: usize, x: &Polynomial<F>) -> Result<Vec<SparseVec<F>>> {
        self.piece(n + s)?;
        let source = &self.pieces[n];
        let target = &self.pieces[n + s];
        let rows = if source.monomial_basis {
            source
                .monomials
                .iter()
                .map(|m| target.restrict(target.space.product_coordinates(m, x)))
                .collect()
        } else {
            let mut rows = Vec::with_capacity(source.dim());
            for b in &source.basis {
                let prod = x.checked_mul(b)?;
                rows.push(target.restrict(target.space.coordinates(&prod)?));
            }
            rows
        };
        Ok(rows)
    }

    /// Image in `G_(n+s)` of `x` times the basis element `index` of `G_n`.
    pub fn multiply_basis(&mut self, n: usize, index: usize, s: usize, x: &Polynomial<F>) -> Result<SparseVec<F>> {
        self.piece(n + s)?;
        let source = &self.pieces[n];
        let target = &self.pieces[n + s];
        if source.monomial_basis {
            Ok(target.restrict(target.space.product_coordinates(&source.monomials[index], x)))
        } else {
            let prod = x.checked_mul(&source.basis[index])?;
            Ok(target.restrict(target.space.coordinates(&prod)?))
        }
    }

    /// Representative in `I^n` of a class given in coordinates.
    pub fn lift(&mut self, n: usize, v: &[(usize, F::Elem)]) -> Result<Polynomial<F>> {
        let ring = self.ideal.base().clone();
        let piece = self.piece(n)?;
        let mut acc = Polynomial::zero(&ring);
        for (i, c) in v {
            acc = acc.checked_add(&piece.basis[*i].scale(c))?;
        }
        Ok(acc)
    }

    /// `dim (x_1, ..., x_k)·G_n` for initial forms of degree-one elements.
    pub fn span_rank(&mut self, n: usize, xs: &[Polynomial<F>]) -> Result<usize> {
        if n == 0 {
            return Ok(0);
        }
        let field = self.field();
        let mut ech = Echelon::new(&field);
        for x in xs {
            for row in self.multiplication_rows(n - 1, 1, x)? {
                ech.insert(row);
            }
        }
        Ok(ech.rank())
    }
}

/// Outcome of testing whether `x_1*, ..., x_k*` is a regular sequence on
/// `G(I)` in degrees up to a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCheck {
    /// Number of leading elements regular through the bound.
    pub regular_prefix: usize,
    pub bound: usize,
    pub failure: Option<RegularityFailure>,
}

/// The first element whose multiplication map has a kernel on
/// `G / (x_1*, ..., x_k*)G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityFailure {
    /// Number of elements already factored out (`k`).
    pub level: usize,
    /// Least source degree with a nonzero kernel.
    pub degree: usize,
    pub kernel_dim: usize,
    /// A degree where some nonzero class is killed by every generator of
    /// `I`, proving depth zero of the quotient.
    pub socle: Option<SocleWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleWitness {
    pub degree: usize,
    pub dim: usize,
}

/// Spans `(x_1*, ..., x_k*)G_(n-1) ⊆ G_n` for every prefix of a sequence of
/// degree-one elements, built one element at a time: `x_(k+1)*` only needs
/// to act on a complement of the previous span, and it is injective on
/// `V^(k) = G/(x_1*, ..., x_k*)G` in a degree exactly when those images stay
/// independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpans {
    /// `dim G_n` for `n = 0..=bound`.
    pub dims: Vec<usize>,
    /// `ranks[k][n] = dim (x_1*, ..., x_k*)G_(n-1)`, for every level computed.
    pub ranks: Vec<Vec<usize>>,
    pub regularity: RegularityCheck,
}

impl SequenceSpans {
    /// Whether the full sequence spans `G_n`.
    pub fn spans(&self, n: usize) -> bool {
        self.ranks.last().is_some_and(|r| r[n] == self.dims[n])
    }
}

/// Computes [`SequenceSpans`] through degree `bound`. With `witnesses`, stops
/// at the first level that fails to be regular and searches for socle
/// elements there; otherwise runs every level.
pub fn sequence_spans<F: Field>(
    g: &mut GradedRing<F>,
    xs: &[Polynomial<F>],
    bound: usize,
    witnesses: bool,
) -> Result<SequenceSpans> {
    let field = g.field();
    let gens = if witnesses {
        g.ideal().reduced_generators()?
    } else {
        Vec::new()
    };
    let dims = (0..=bound).map(|n| g.dim(n)).collect::<Result<Vec<_>>>()?;
    let mut stage: Vec<Echelon<F>> = (0..=bound).map(|_| Echelon::new(&field)).collect();
    let mut ranks = vec![vec![0; bound + 1]];
    let mut first_failure = None;
    for (level, x) in xs.iter().enumerate() {
        // descending, so `stage[s]` still holds the previous level at step s
        let mut failures: Vec<(usize, usize, usize)> = Vec::new();
        for s in (0..bound).rev() {
            let free: Vec<usize> = (0..dims[s]).filter(|&j| !stage[s].is_pivot(j)).collect();
            let before = witnesses.then(|| stage[s + 1].clone());
            let mut dependent = 0;
            for &j in &free {
                let row = g.multiply_basis(s, j, 1, x)?;
                if !stage[s + 1].insert(row) {
                    dependent += 1;
                }
            }
            if dependent > 0 {
                let socle = match &before {
                    Some(target) => socle_dimension(g, &gens, s, &stage[s], target)?,
                    None => 0,
                };
                failures.push((s, dependent, socle));
            }
        }
        ranks.push(stage.iter().map(Echelon::rank).collect());
        if first_failure.is_none() {
            if let Some(&(degree, kernel_dim, _)) = failures.iter().min_by_key(|f| f.0) {
                let socle = failures
                    .iter()
                    .filter(|f| f.2 > 0)
                    .min_by_key(|f| f.0)
                    .map(|&(degree, _, dim)| SocleWitness { degree, dim });
                first_failure = Some(RegularityFailure {
                    level,
                    degree,
                    kernel_dim,
                    socle,
                });
                if witnesses {
                    break;
                }
            }
        }
    }
    let regular_prefix = first_failure.as_ref().map_or(xs.len(), |f| f.level);
    Ok(SequenceSpans {
        dims,
        ranks,
        regularity: RegularityCheck {
            regular_prefix,
            bound,
            failure: first_failure,
        },
    })
}

/// Tests `x_(k+1)*` on `V^(k)` through target degree `bound`, stopping at
/// the first level with a kernel.
pub fn check_regular_sequence<F: Field>(
    g: &mut GradedRing<F>,
    xs: &[Polynomial<F>],
    bound: usize,
) -> Result<RegularityCheck> {
    Ok(sequence_spans(g, xs, bound, true)?.regularity)
}

/// `dim { v ∈ V_s : a*·v = 0 in V_(s+1) for every generator a }`.
fn socle_dimension<F: Field>(
    g: &mut GradedRing<F>,
    gens: &[Polynomial<F>],
    s: usize,
    source: &Echelon<F>,
    target: &Echelon<F>,
) -> Result<usize> {
    let width = g.pieces[s + 1].dim();
    let free: Vec<usize> = (0..g.pieces[s].dim()).filter(|&j| !source.is_pivot(j)).collect();
    let mut rows = Vec::with_capacity(free.len());
    for &j in &free {
        let mut row = Vec::new();
        for (k, a) in gens.iter().enumerate() {
            let image = target.reduce_full(g.multiply_basis(s, j, 1, a)?);
            row.extend(image.into_iter().map(|(i, c)| (k * width + i, c)));
        }
        rows.push(row);
    }
    let field = g.field();
    Ok(Echelon::left_kernel(&field, rows).len())
}
