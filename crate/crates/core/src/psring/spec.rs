use crate::error::{Error, Result};
use crate::exactalg::{Fe, FiniteField, TruncSeries};
use crate::textfmt::{self, Key, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Coefficient space allowed at one exponent below the conductor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Zero,
    Prime,
    Full,
}

impl Level {
    fn times(self, o: Level) -> Level {
        match (self, o) {
            (Level::Zero, _) | (_, Level::Zero) => Level::Zero,
            (Level::Prime, Level::Prime) => Level::Prime,
            _ => Level::Full,
        }
    }

    fn within(self, o: Level) -> bool {
        self <= o
    }
}

/// A local subring `D ⊆ k'[[T]]`: coefficients of `T^i` range over a
/// subfield `k_i` that is zero off a numerical semigroup and all of `k'`
/// from the conductor on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupRingSpec {
    field: Arc<FiniteField>,
    prime: Arc<FiniteField>,
    semigroup: Vec<u32>,
    residue: BTreeMap<u32, Arc<FiniteField>>,
    precision: Option<i64>,
    conductor: u32,
    levels: Vec<Level>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Conductor of the numerical semigroup generated by `gens` (0 if it is ℕ).
pub fn semigroup_conductor(gens: &[u32]) -> Result<u32> {
    if gens.is_empty() || gens.contains(&0) {
        return Err(Error::InvalidSpec("semigroup generators must be positive".into()));
    }
    if gens.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
        return Err(Error::InvalidSpec("semigroup generators must have gcd 1 (finite complement)".into()));
    }
    let m = *gens.iter().max().unwrap() as usize;
    let bound = m * m + m + 1;
    let mut member = vec![false; bound];
    member[0] = true;
    for i in 1..bound {
        member[i] = gens.iter().any(|&g| (g as usize) <= i && member[i - g as usize]);
    }
    Ok(member.iter().rposition(|&b| !b).map_or(0, |i| i as u32 + 1))
}

impl SemigroupRingSpec {
    pub fn new(
        field: Arc<FiniteField>,
        semigroup: Vec<u32>,
        residue: BTreeMap<u32, Arc<FiniteField>>,
        precision: Option<i64>,
    ) -> Result<Self> {
        let sg_c = semigroup_conductor(&semigroup)?;
        let prime = FiniteField::prime(field.characteristic())?;
        for sub in residue.values() {
            if **sub != *field && **sub != *prime {
                return Err(Error::InvalidSpec(format!("{sub} is not a subfield of {field}")));
            }
        }
        if let Some(p) = precision {
            if !(1..=256).contains(&p) {
                return Err(Error::InvalidSpec(format!("precision {p} outside 1..=256")));
            }
        }
        let constrained_top = residue
            .iter()
            .filter(|(_, sub)| ***sub != *field)
            .map(|(&i, _)| i + 1)
            .max()
            .unwrap_or(0);
        let conductor = sg_c.max(constrained_top);
        let in_sg = |i: u32| -> bool {
            if i >= sg_c {
                return true;
            }
            // small exponents: direct search
            let mut member = vec![false; i as usize + 1];
            member[0] = true;
            for k in 1..=i as usize {
                member[k] = semigroup.iter().any(|&g| (g as usize) <= k && member[k - g as usize]);
            }
            member[i as usize]
        };
        for &i in residue.keys() {
            if !in_sg(i) {
                return Err(Error::InvalidSpec(format!(
                    "residue constraint at exponent {i}, which is not in the semigroup"
                )));
            }
        }
        let levels: Vec<Level> = (0..conductor)
            .map(|i| {
                if !in_sg(i) {
                    Level::Zero
                } else {
                    match residue.get(&i) {
                        Some(sub) if **sub != *field => Level::Prime,
                        _ => Level::Full,
                    }
                }
            })
            .collect();
        let level = |i: u32| levels.get(i as usize).copied().unwrap_or(Level::Full);
        for i in 0..conductor {
            for j in i..conductor {
                if !level(i).times(level(j)).within(level(i + j)) {
                    return Err(Error::InvalidSpec(format!(
                        "not a ring: k_{i}·k_{j} is not contained in k_{}",
                        i + j
                    )));
                }
            }
        }
        Ok(SemigroupRingSpec {
            field,
            prime,
            semigroup,
            residue,
            precision,
            conductor,
            levels,
        })
    }

    /// `F2[[T^2, T^3]]`.
    pub fn f2_semi23() -> Self {
        Self::new(FiniteField::prime(2).unwrap(), vec![2, 3], BTreeMap::new(), Some(32)).unwrap()
    }

    /// `F2 + T·F4[[T]]`.
    pub fn f2_tf4() -> Self {
        let f4 = FiniteField::new(2, 2).unwrap();
        let f2 = FiniteField::prime(2).unwrap();
        Self::new(f4, vec![1], BTreeMap::from([(0, f2)]), Some(32)).unwrap()
    }

    /// The power series ring `k[[T]]`.
    pub fn dvr(field: Arc<FiniteField>) -> Self {
        Self::new(field, vec![1], BTreeMap::new(), Some(32)).unwrap()
    }

    pub fn f2_dvr() -> Self {
        Self::dvr(FiniteField::prime(2).unwrap())
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn prime_field(&self) -> &Arc<FiniteField> {
        &self.prime
    }

    /// Degree of the ambient field over its prime field.
    pub fn ext_degree(&self) -> usize {
        self.field.degree() as usize
    }

    pub fn semigroup(&self) -> &[u32] {
        &self.semigroup
    }

    pub fn residue(&self) -> &BTreeMap<u32, Arc<FiniteField>> {
        &self.residue
    }

    /// Smallest `c` with `T^c k'[[T]] ⊆ D`.
    pub fn conductor(&self) -> i64 {
        self.conductor as i64
    }

    pub fn stated_precision(&self) -> Option<i64> {
        self.precision
    }

    /// Precision used when none is requested explicitly.
    pub fn default_precision(&self, degree: usize) -> i64 {
        self.precision
            .unwrap_or_else(|| 4 * (self.conductor() + degree as i64).max(1))
    }

    pub fn is_dvr(&self) -> bool {
        self.conductor == 0
    }

    pub fn level(&self, i: i64) -> Level {
        if i < 0 {
            Level::Zero
        } else {
            self.levels.get(i as usize).copied().unwrap_or(Level::Full)
        }
    }

    /// Prime-field basis of the coefficient space at exponent `i`.
    pub fn level_basis(&self, i: i64) -> Vec<Fe> {
        match self.level(i) {
            Level::Zero => vec![],
            Level::Prime => vec![Fe(1)],
            Level::Full => self.full_basis(),
        }
    }

    /// Prime-field basis `1, g` (or `1`) of the ambient field.
    pub fn full_basis(&self) -> Vec<Fe> {
        if self.field.degree() == 2 {
            vec![Fe(1), self.field.generator()]
        } else {
            vec![Fe(1)]
        }
    }

    pub fn coeff_allowed(&self, i: i64, c: Fe) -> bool {
        match self.level(i) {
            Level::Zero => c.0 == 0,
            Level::Prime => self.field.in_prime_subfield(c),
            Level::Full => true,
        }
    }

    /// The first `n` elements `β T^i` of the ordered prime-field basis of `D`.
    pub fn basis_elements(&self, n: usize) -> Vec<TruncSeries> {
        let mut out = Vec::with_capacity(n);
        let mut i = 0;
        while out.len() < n {
            for b in self.level_basis(i) {
                if out.len() < n {
                    out.push(TruncSeries::monomial(&self.field, b, i, crate::exactalg::EXACT));
                }
            }
            i += 1;
        }
        out
    }

    /// Human readable name like `F2[[T^2,T^3]]`.
    pub fn describe(&self) -> String {
        let k = self.field.name();
        if self.is_dvr() {
            return format!("{k}[[T]]");
        }
        let gens: Vec<String> = self
            .semigroup
            .iter()
            .map(|&g| if g == 1 { "T".into() } else { format!("T^{g}") })
            .collect();
        let mut s = format!("{k}[[{}]]", gens.join(","));
        for (i, sub) in &self.residue {
            if **sub != *self.field {
                s.push_str(&format!(" with T^{i} over {sub}"));
            }
        }
        s
    }

    pub fn to_document(&self) -> textfmt::Document {
        let mut d = textfmt::Document::default();
        d.push("ambient_field", Value::Str(self.field.name()));
        d.push(
            "semigroup",
            Value::List(self.semigroup.iter().map(|&g| Value::Int(g as i64)).collect()),
        );
        d.push(
            "residue",
            Value::Map(
                self.residue
                    .iter()
                    .map(|(&i, f)| (Key::Int(i as i64), Value::Str(f.name())))
                    .collect(),
            ),
        );
        if let Some(p) = self.precision {
            d.push("precision", Value::Int(p));
        }
        d
    }

    pub fn to_text(&self) -> String {
        self.to_document().to_text()
    }

    pub fn from_text(src: &str) -> Result<Self> {
        let doc = textfmt::parse(src)?;
        let at = |off: usize, msg: String| Error::parse_at(src, off, msg);
        for (k, _, off) in &doc.entries {
            if !["ambient_field", "semigroup", "residue", "precision"].contains(&k.as_str()) {
                return Err(at(*off, format!("unknown key {k:?}")));
            }
        }
        let (fv, foff) = doc
            .get("ambient_field")
            .ok_or_else(|| at(src.len(), "missing ambient_field".into()))?;
        let Value::Str(fname) = fv else {
            return Err(at(foff, "ambient_field must be a string".into()));
        };
        let field = FiniteField::by_name(fname).map_err(|e| at(foff, e.to_string()))?;
        let semigroup = match doc.get("semigroup") {
            None => vec![1],
            Some((Value::List(xs), off)) => xs
                .iter()
                .map(|x| match x {
                    Value::Int(n) if *n > 0 && *n < 1000 => Ok(*n as u32),
                    _ => Err(at(off, "semigroup entries must be positive integers".into())),
                })
                .collect::<Result<Vec<_>>>()?,
            Some((_, off)) => return Err(at(off, "semigroup must be a list".into())),
        };
        let mut residue = BTreeMap::new();
        match doc.get("residue") {
            None => {}
            Some((Value::Map(kv), off)) => {
                for (k, v) in kv {
                    let (Key::Int(i), Value::Str(name)) = (k, v) else {
                        return Err(at(off, "residue entries must look like 0: \"F2\"".into()));
                    };
                    if *i < 0 {
                        return Err(at(off, "residue exponents must be non-negative".into()));
                    }
                    let sub = FiniteField::by_name(name).map_err(|e| at(off, e.to_string()))?;
                    residue.insert(*i as u32, sub);
                }
            }
            Some((_, off)) => return Err(at(off, "residue must be a map".into())),
        }
        let precision = match doc.get("precision") {
            None => None,
            Some((Value::Int(p), _)) => Some(*p),
            Some((_, off)) => return Err(at(off, "precision must be an integer".into())),
        };
        Self::new(field, semigroup, residue, precision)
    }
}
