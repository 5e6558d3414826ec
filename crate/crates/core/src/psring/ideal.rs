use super::spec::SemigroupRingSpec;
use crate::error::{Error, Result};
use crate::exactalg::linalg::intersect_spans;
use crate::exactalg::{ff_solve, Echelon, Fe, FfMatrix, FiniteField, TruncSeries, EXACT};
use crate::verdict::Verdict;
use std::fmt;
use std::sync::Arc;

/// Prime-field coordinates of `x` on the exponent window `[lo, hi)`.
pub fn coords(x: &TruncSeries, lo: i64, hi: i64, e: usize) -> Vec<Fe> {
    let f = x.field();
    let mut v = Vec::with_capacity(((hi - lo).max(0) as usize) * e);
    for n in lo..hi {
        let c = f.prime_coords(x.coeff(n));
        v.extend(c[..e].iter().map(|&x| Fe(x)));
    }
    v
}

/// Inverse of [`coords`].
pub fn from_coords(field: &Arc<FiniteField>, lo: i64, v: &[Fe], e: usize, prec: i64) -> TruncSeries {
    let c: Vec<Fe> = v
        .chunks(e)
        .map(|ch| field.from_prime_coords(ch[0].0, ch.get(1).map_or(0, |x| x.0)))
        .collect();
    TruncSeries::from_coeffs(field, lo, &c, prec)
}

/// Canonical form of a fractional ideal `I` with `T^tail k'[[T]] ⊆ I ⊆ T^lo k'[[T]]`:
/// `lo` is the minimal valuation, `tail` the minimal such exponent, and
/// `rows` the reduced echelon basis of `I / T^tail k'[[T]]` in prime-field
/// coordinates on `[lo, tail)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Staircase {
    pub lo: i64,
    pub tail: i64,
    pub rows: Vec<Vec<Fe>>,
}

impl Staircase {
    /// Canonicalizes the span of `vectors` (coordinates on `[wlo, whi)`)
    /// plus `T^whi k'[[T]]`.
    fn from_span(
        prime: &Arc<FiniteField>,
        e: usize,
        wlo: i64,
        whi: i64,
        vectors: impl IntoIterator<Item = Vec<Fe>>,
    ) -> (Staircase, Echelon) {
        let ncols = ((whi - wlo).max(0) as usize) * e;
        let ech = Echelon::from_rows(prime, ncols, vectors);
        let mut tail = whi;
        while tail > wlo {
            let base = ((tail - 1 - wlo) as usize) * e;
            if (base..base + e).all(|c| ech.is_pivot(c)) {
                tail -= 1;
            } else {
                break;
            }
        }
        let cut = ((tail - wlo).max(0) as usize) * e;
        let first = ech.pivots().into_iter().find(|&c| c < cut);
        let lo = first.map_or(tail, |c| wlo + (c / e) as i64);
        let start = ((lo - wlo) as usize) * e;
        let rows: Vec<Vec<Fe>> = ech
            .rows_sorted()
            .into_iter()
            .filter(|r| r.iter().position(|x| x.0 != 0).is_some_and(|p| p < cut))
            .map(|r| r[start..cut].to_vec())
            .collect();
        let ech = Echelon::from_rows(prime, cut - start, rows.iter().cloned());
        (Staircase { lo, tail, rows }, ech)
    }

    /// Prime-field dimension of `I / T^tail k'[[T]]` per exponent.
    pub fn profile(&self, e: usize) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = (self.lo..self.tail).map(|n| (n, 0)).collect();
        for r in &self.rows {
            let p = r.iter().position(|x| x.0 != 0).unwrap();
            out[p / e].1 += 1;
        }
        out
    }
}

/// A nonzero fractional ideal of a semigroup ring, kept in staircase form.
#[derive(Clone, Debug)]
pub struct FracIdeal {
    spec: Arc<SemigroupRingSpec>,
    gens: Vec<TruncSeries>,
    stair: Staircase,
    ech: Echelon,
}

impl PartialEq for FracIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.spec == o.spec && self.stair == o.stair
    }
}

impl Eq for FracIdeal {}

/// v-closure of a finitely generated ideal; it coincides with the t-closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub ideal: FracIdeal,
    pub t_equals_v: bool,
}

impl FracIdeal {
    /// The D-submodule of `k'((T))` generated by `gens`.
    pub fn from_generators(spec: &Arc<SemigroupRingSpec>, gens: &[TruncSeries]) -> Result<FracIdeal> {
        let field = spec.field();
        for g in gens {
            if g.field() != field {
                return Err(Error::field_mismatch(g.field(), field));
            }
        }
        let gens: Vec<TruncSeries> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let e = spec.ext_degree();
        let lo = gens.iter().map(|g| g.valuation().unwrap()).min().unwrap();
        let whi = lo + spec.conductor();
        let mut vectors = Vec::new();
        for g in &gens {
            if g.precision() < whi {
                return Err(Error::PrecisionExhausted(format!(
                    "generator {g} is known modulo T^{} but T^{whi} is needed",
                    g.precision()
                )));
            }
            let v = g.valuation().unwrap();
            for j in 0..(whi - v) {
                for b in spec.level_basis(j) {
                    let m = TruncSeries::monomial(field, b, j, EXACT);
                    vectors.push(coords(&g.mul(&m)?, lo, whi, e));
                }
            }
        }
        let (stair, ech) = Staircase::from_span(spec.prime_field(), e, lo, whi, vectors);
        Ok(FracIdeal {
            spec: spec.clone(),
            gens,
            stair,
            ech,
        })
    }

    pub fn principal(spec: &Arc<SemigroupRingSpec>, a: &TruncSeries) -> Result<FracIdeal> {
        Self::from_generators(spec, std::slice::from_ref(a))
    }

    /// The ring `D` itself.
    pub fn unit(spec: &Arc<SemigroupRingSpec>) -> FracIdeal {
        Self::principal(spec, &TruncSeries::one(spec.field(), EXACT)).expect("1 generates D")
    }

    /// `T^n k'[[T]]`.
    pub fn power_of_t(spec: &Arc<SemigroupRingSpec>, n: i64) -> FracIdeal {
        Self::from_span(spec, n, n, Vec::new())
    }

    /// The maximal ideal of `D`.
    pub fn maximal(spec: &Arc<SemigroupRingSpec>) -> FracIdeal {
        let w = spec.conductor().max(1);
        let e = spec.ext_degree();
        let mut vecs = Vec::new();
        for i in 1..w {
            for b in spec.level_basis(i) {
                let m = TruncSeries::monomial(spec.field(), b, i, EXACT);
                vecs.push(coords(&m, 0, w, e));
            }
        }
        Self::from_span(spec, 0, w, vecs)
    }

    fn from_span(spec: &Arc<SemigroupRingSpec>, wlo: i64, whi: i64, vecs: Vec<Vec<Fe>>) -> FracIdeal {
        let (stair, ech) = Staircase::from_span(spec.prime_field(), spec.ext_degree(), wlo, whi, vecs);
        let mut out = FracIdeal {
            spec: spec.clone(),
            gens: Vec::new(),
            stair,
            ech,
        };
        out.gens = out.generating_set();
        out
    }

    pub fn spec(&self) -> &Arc<SemigroupRingSpec> {
        &self.spec
    }

    /// Generators as supplied (or the canonical generating set for computed ideals).
    pub fn generators(&self) -> &[TruncSeries] {
        &self.gens
    }

    pub fn staircase(&self) -> &Staircase {
        &self.stair
    }

    /// Minimal valuation of the ideal.
    pub fn lo(&self) -> i64 {
        self.stair.lo
    }

    /// Minimal `N` with `T^N k'[[T]] ⊆ I`.
    pub fn tail(&self) -> i64 {
        self.stair.tail
    }

    fn e(&self) -> usize {
        self.spec.ext_degree()
    }

    /// Exact elements generating the ideal as a D-module: the staircase rows
    /// and enough monomials to cover `T^tail k'[[T]]`.
    pub fn generating_set(&self) -> Vec<TruncSeries> {
        let f = self.spec.field();
        let e = self.e();
        let mut out: Vec<TruncSeries> = self
            .stair
            .rows
            .iter()
            .map(|r| from_coords(f, self.stair.lo, r, e, EXACT))
            .collect();
        for i in self.stair.tail..self.stair.tail + self.spec.conductor().max(1) {
            for b in self.spec.full_basis() {
                out.push(TruncSeries::monomial(f, b, i, EXACT));
            }
        }
        out
    }

    /// Reduces the coordinates of `x` on `[lo, tail)`; `None` if `x` is
    /// not known that far.
    fn residual(&self, x: &TruncSeries) -> Option<Vec<Fe>> {
        if x.precision() < self.stair.tail {
            return None;
        }
        let mut v = coords(x, self.stair.lo, self.stair.tail, self.e());
        self.ech.reduce(&mut v);
        Some(v)
    }

    pub fn contains(&self, x: &TruncSeries) -> Verdict {
        let (lo, tail) = (self.stair.lo, self.stair.tail);
        if let Some(v) = x.valuation() {
            if v < lo {
                return Verdict::no(format!("{x} has valuation {v} < {lo}"));
            }
        }
        if x.precision() < tail {
            if x.valuation_bound() >= tail {
                return Verdict::unknown(format!("element known only modulo T^{}", x.precision()));
            }
            // the known part may already be inconsistent with I
            let p = x.precision();
            let k = ((p - lo).max(0) as usize) * self.e();
            let ech = Echelon::from_rows(
                self.spec.prime_field(),
                k,
                self.stair.rows.iter().map(|r| r[..k].to_vec()),
            );
            if !ech.contains(&coords(x, lo, p, self.e())) {
                return Verdict::no(format!("{x} is not in the ideal modulo T^{p}"));
            }
            return Verdict::unknown(format!("element known only modulo T^{p}, ideal needs T^{tail}"));
        }
        let r = self.residual(x).expect("precision checked");
        match r.iter().position(|c| c.0 != 0) {
            None => Verdict::yes(),
            Some(i) => Verdict::no(format!(
                "{x} leaves the ideal at exponent {}",
                lo + (i / self.e()) as i64
            )),
        }
    }

    /// Exact inclusion `o ⊆ self`.
    pub fn contains_ideal(&self, o: &FracIdeal) -> bool {
        if o.stair.lo < self.stair.lo {
            return false;
        }
        o.generating_set()
            .iter()
            .all(|g| self.residual(g).is_some_and(|r| r.iter().all(|c| c.0 == 0)))
    }

    fn check_same(&self, o: &FracIdeal) -> Result<()> {
        if self.spec != o.spec {
            return Err(Error::InvalidArgument("ideals over different rings".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &FracIdeal) -> Result<FracIdeal> {
        self.check_same(o)?;
        let mut g = self.generating_set();
        g.extend(o.generating_set());
        Self::from_generators(&self.spec, &g)
    }

    pub fn mul(&self, o: &FracIdeal) -> Result<FracIdeal> {
        self.check_same(o)?;
        let (a, b) = (self.generating_set(), o.generating_set());
        let mut g = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                g.push(x.mul(y)?);
            }
        }
        Self::from_generators(&self.spec, &g)
    }

    /// `a·I` for a nonzero element `a` of the fraction field.
    pub fn scale(&self, a: &TruncSeries) -> Result<FracIdeal> {
        if a.is_zero() {
            return Err(Error::ZeroDivisorInput);
        }
        let g = self
            .generating_set()
            .iter()
            .map(|x| x.mul(a))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(&self.spec, &g)
    }

    pub fn intersect(&self, o: &FracIdeal) -> Result<FracIdeal> {
        self.check_same(o)?;
        let e = self.e();
        let wlo = self.stair.lo.min(o.stair.lo);
        let whi = self.stair.tail.max(o.stair.tail);
        let ncols = ((whi - wlo) as usize) * e;
        let embed = |id: &FracIdeal| -> Vec<Vec<Fe>> {
            let off = ((id.stair.lo - wlo) as usize) * e;
            let mut out: Vec<Vec<Fe>> = id
                .stair
                .rows
                .iter()
                .map(|r| {
                    let mut v = vec![Fe(0); ncols];
                    v[off..off + r.len()].copy_from_slice(r);
                    v
                })
                .collect();
            for c in ((id.stair.tail - wlo) as usize) * e..ncols {
                let mut v = vec![Fe(0); ncols];
                v[c] = Fe(1);
                out.push(v);
            }
            out
        };
        let inter = intersect_spans(self.spec.prime_field(), ncols, &embed(self), &embed(o));
        Ok(Self::from_span(&self.spec, wlo, whi, inter))
    }

    /// `{x : x·other ⊆ self}`.
    pub fn colon(&self, other: &FracIdeal) -> Result<FracIdeal> {
        self.check_same(other)?;
        let f = self.spec.field();
        let xlo = self.stair.lo - other.stair.lo;
        let xhi = self.stair.tail - other.stair.lo;
        let unknowns: Vec<TruncSeries> = (xlo..xhi)
            .flat_map(|i| {
                self.spec
                    .full_basis()
                    .into_iter()
                    .map(move |b| TruncSeries::monomial(f, b, i, EXACT))
            })
            .collect();
        if unknowns.is_empty() {
            return Ok(Self::from_span(&self.spec, xlo, xhi, Vec::new()));
        }
        let gens = other.generating_set();
        let block = self.ech.ncols();
        let mut m = FfMatrix::zeros(self.spec.prime_field(), gens.len() * block, unknowns.len());
        for (j, u) in unknowns.iter().enumerate() {
            for (gi, g) in gens.iter().enumerate() {
                let r = self.residual(&u.mul(g)?).expect("exact product");
                for (k, c) in r.into_iter().enumerate() {
                    m.set(gi * block + k, j, c);
                }
            }
        }
        let kernel = ff_solve(&m, &[])?.nullspace;
        Ok(Self::from_span(&self.spec, xlo, xhi, kernel))
    }

    /// `I⁻¹ = (D : I)`.
    pub fn inverse(&self) -> Result<FracIdeal> {
        FracIdeal::unit(&self.spec).colon(self)
    }

    /// `(I⁻¹)⁻¹`.
    pub fn v_closure(&self) -> Result<FracIdeal> {
        self.inverse()?.inverse()
    }

    /// Whether the ideal lies inside `D`.
    pub fn is_integral(&self) -> bool {
        FracIdeal::unit(&self.spec).contains_ideal(self)
    }

    pub fn is_unit_ideal(&self) -> bool {
        *self == FracIdeal::unit(&self.spec)
    }

    /// Prime-field dimension of `self / sub` for an ideal `sub ⊆ self`.
    pub fn codimension_of(&self, sub: &FracIdeal) -> usize {
        let whi = self.stair.tail.max(sub.stair.tail);
        let dim = |id: &FracIdeal| id.stair.rows.len() + ((whi - id.stair.tail) as usize) * id.e();
        dim(self) - dim(sub)
    }

    /// Minimal number of generators, `dim_{D/M} I/MI`.
    pub fn min_generator_count(&self) -> Result<usize> {
        let m = FracIdeal::maximal(&self.spec);
        let mi = m.mul(self)?;
        let k0 = self.spec.level_basis(0).len().max(1);
        Ok(self.codimension_of(&mi) / k0)
    }

    pub fn is_principal(&self) -> Result<bool> {
        Ok(self.min_generator_count()? == 1)
    }

    /// Staircase description such as `F2[[T]]` or `<1> + T^2·F2[[T]]`.
    pub fn describe(&self) -> String {
        let k = self.spec.field().name();
        let tail = match self.stair.tail {
            0 => format!("{k}[[T]]"),
            1 => format!("T·{k}[[T]]"),
            n => format!("T^{n}·{k}[[T]]"),
        };
        if self.stair.rows.is_empty() {
            return tail;
        }
        let f = self.spec.field();
        let rows: Vec<String> = self
            .stair
            .rows
            .iter()
            .map(|r| from_coords(f, self.stair.lo, r, self.e(), EXACT).to_string())
            .collect();
        format!("<{}> + {tail}", rows.join(", "))
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// `(I⁻¹)⁻¹`, flagged as also being the t-closure.
pub fn v_closure_fg(i: &FracIdeal) -> Result<Closure> {
    Ok(Closure {
        ideal: i.v_closure()?,
        t_equals_v: true,
    })
}

pub fn ideal_colon(i: &FracIdeal, j: &FracIdeal) -> Result<FracIdeal> {
    i.colon(j)
}
