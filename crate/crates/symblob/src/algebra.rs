//! Sparse algebra elements, full multiplication tables, their canonical JSON
//! form and the digest-keyed table cache.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::diagram::concat::multiply;
use crate::diagram::enumerate::{enumerate_basis, Flavor};
use crate::diagram::quotient::SymplecticQuotient;
use crate::error::{Error, Result};
use crate::presented::enumerate::{default_cap, PresentedAlgebra};
use crate::scalar::{parse_scalar, Field, ParameterSet};
use crate::util::SplitMix64;

pub const TABLE_FORMAT_VERSION: u32 = 1;

/// A sparse combination of basis indices; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement<F: Field> {
    terms: BTreeMap<u32, F>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(index: u32, coeff: F) -> Self {
        let mut e = AlgebraElement::zero();
        e.add_term(index, coeff);
        e
    }

    pub fn add_term(&mut self, index: u32, coeff: F) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(index).or_insert_with(F::zero);
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &F) {
        for (i, c) in &other.terms {
            self.add_term(*i, c.mul(scale));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &F)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn single(&self) -> Option<(u32, &F)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(i, c)| (*i, c))
        } else {
            None
        }
    }
}

/// A complete multiplication table over an ordered basis.
pub struct StructureTable<F: Field> {
    pub flavor: Flavor,
    pub n: u16,
    pub params: ParameterSet<F>,
    /// Canonical encodings of the basis elements.
    pub basis: Vec<String>,
    pub identity: usize,
    /// products[i][j] = basis_i * basis_j.
    pub products: Vec<Vec<AlgebraElement<F>>>,
}

impl<F: Field> StructureTable<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Bilinear multiplication through the table.
    pub fn mul_elements(&self, a: &AlgebraElement<F>, b: &AlgebraElement<F>) -> AlgebraElement<F> {
        let mut out = AlgebraElement::zero();
        for (i, ca) in a.terms() {
            for (j, cb) in b.terms() {
                out.add_scaled(&self.products[i as usize][j as usize], &ca.mul(cb));
            }
        }
        out
    }

    /// Exact associativity on `count` seeded random basis triples.
    pub fn associativity_sample(&self, seed: u64, count: usize) -> bool {
        let mut rng = SplitMix64::new(seed);
        let dim = self.dim() as u64;
        for _ in 0..count {
            let a = AlgebraElement::term(rng.below(dim) as u32, F::one());
            let b = AlgebraElement::term(rng.below(dim) as u32, F::one());
            let c = AlgebraElement::term(rng.below(dim) as u32, F::one());
            let left = self.mul_elements(&self.mul_elements(&a, &b), &c);
            let right = self.mul_elements(&a, &self.mul_elements(&b, &c));
            if left != right {
                return false;
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        let mut params = Map::new();
        for (name, value) in self.params.as_strings() {
            params.insert(name.to_string(), Value::String(value));
        }
        let mut products = Vec::new();
        for (i, row) in self.products.iter().enumerate() {
            for (j, element) in row.iter().enumerate() {
                let terms: Vec<Value> = element
                    .terms()
                    .map(|(k, c)| json!([k, c.coeff_string()]))
                    .collect();
                products.push(json!([i, j, terms]));
            }
        }
        json!({
            "version": TABLE_FORMAT_VERSION,
            "flavor": self.flavor.name(),
            "n": self.n,
            "backend": F::backend_name(),
            "params": Value::Object(params),
            "identity": self.identity,
            "basis": self.basis,
            "products": products,
        })
    }

    pub fn from_json(value: &Value) -> Result<StructureTable<F>> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("table is not an object".into()))?;
        let get = |k: &str| {
            obj.get(k)
                .ok_or_else(|| Error::Parse(format!("missing key `{k}`")))
        };
        let version = get("version")?.as_u64().unwrap_or(0);
        if version != TABLE_FORMAT_VERSION as u64 {
            return Err(Error::Parse(format!("unsupported table version {version}")));
        }
        let flavor: Flavor = get("flavor")?
            .as_str()
            .ok_or_else(|| Error::Parse("flavor must be a string".into()))?
            .parse()?;
        let n = get("n")?
            .as_u64()
            .ok_or_else(|| Error::Parse("bad n".into()))? as u16;
        let params_obj = get("params")?
            .as_object()
            .ok_or_else(|| Error::Parse("params must be an object".into()))?;
        let lookup = |k: &str| -> Result<F> {
            let s = params_obj
                .get(k)
                .and_then(|v| v.as_str())
                .ok_or_else(|| Error::Parse(format!("missing parameter `{k}`")))?;
            parse_scalar(s)
        };
        let params = ParameterSet::new(
            lookup("delta")?,
            lookup("deltaL")?,
            lookup("deltaR")?,
            lookup("kappaL")?,
            lookup("kappaR")?,
            lookup("kappaLR")?,
        )?;
        let basis: Vec<String> = get("basis")?
            .as_array()
            .ok_or_else(|| Error::Parse("basis must be an array".into()))?
            .iter()
            .map(|v| v.as_str().unwrap_or_default().to_string())
            .collect();
        let identity = get("identity")?
            .as_u64()
            .ok_or_else(|| Error::Parse("bad identity".into()))? as usize;
        let dim = basis.len();
        let mut products = vec![vec![AlgebraElement::<F>::zero(); dim]; dim];
        for entry in get("products")?
            .as_array()
            .ok_or_else(|| Error::Parse("products must be an array".into()))?
        {
            let triple = entry
                .as_array()
                .ok_or_else(|| Error::Parse("bad product entry".into()))?;
            let i = triple[0].as_u64().unwrap() as usize;
            let j = triple[1].as_u64().unwrap() as usize;
            let mut element = AlgebraElement::zero();
            for term in triple[2].as_array().unwrap() {
                let pair = term.as_array().unwrap();
                let k = pair[0].as_u64().unwrap() as u32;
                let c: F = parse_scalar(pair[1].as_str().unwrap())?;
                element.add_term(k, c);
            }
            products[i][j] = element;
        }
        Ok(StructureTable {
            flavor,
            n,
            params,
            basis,
            identity,
            products,
        })
    }
}

/// Builds the multiplication table of any flavor at the given size.
pub fn build_table<F: Field>(
    n: u16,
    flavor: Flavor,
    params: &ParameterSet<F>,
) -> Result<StructureTable<F>> {
    match flavor {
        Flavor::Tl | Flavor::BlobL | Flavor::BlobR | Flavor::LrBlob => {
            let basis = enumerate_basis(n, flavor)?;
            let index: std::collections::HashMap<_, u32> =
                basis.iter().cloned().zip(0u32..).collect();
            let identity = index
                .get(&crate::diagram::Diagram::identity(n))
                .copied()
                .ok_or_else(|| Error::QuotientInconsistent("identity missing from basis".into()))?
                as usize;
            let mut products = Vec::with_capacity(basis.len());
            for a in &basis {
                let mut row = Vec::with_capacity(basis.len());
                for b in &basis {
                    let (s, d) = multiply(a, b, params)?;
                    let k = index.get(&d).copied().ok_or_else(|| {
                        Error::QuotientInconsistent(format!(
                            "product {d} escaped the {flavor} basis"
                        ))
                    })?;
                    row.push(AlgebraElement::term(k, s));
                }
                products.push(row);
            }
            Ok(StructureTable {
                flavor,
                n,
                params: params.clone(),
                basis: basis.iter().map(|d| d.encode()).collect(),
                identity,
                products,
            })
        }
        Flavor::Symplectic => {
            let quotient = SymplecticQuotient::build(n, params)?;
            let identity = quotient
                .rep_index_of(&crate::diagram::Diagram::identity(n))
                .ok_or_else(|| {
                    Error::QuotientInconsistent("identity not a representative".into())
                })? as usize;
            let dim = quotient.dim();
            let mut products = Vec::with_capacity(dim);
            for i in 0..dim {
                let mut row = Vec::with_capacity(dim);
                for j in 0..dim {
                    let element = match quotient.mul(i, j)? {
                        Some((c, k)) => AlgebraElement::term(k, c),
                        None => AlgebraElement::zero(),
                    };
                    row.push(element);
                }
                products.push(row);
            }
            Ok(StructureTable {
                flavor,
                n,
                params: params.clone(),
                basis: quotient.reps.iter().map(|d| d.encode()).collect(),
                identity,
                products,
            })
        }
        Flavor::Presented => {
            let algebra = PresentedAlgebra::build(n, params, default_cap(n))?;
            let dim = algebra.dim();
            let identity = algebra
                .classes
                .index_of(&crate::presented::TraceWord::empty(n))
                .ok_or_else(|| Error::QuotientInconsistent("empty class missing".into()))?
                as usize;
            let mut products = Vec::with_capacity(dim);
            for i in 0..dim {
                let mut row = Vec::with_capacity(dim);
                for j in 0..dim {
                    let (c, k) = algebra.mul(i, j)?;
                    row.push(AlgebraElement::term(k, c));
                }
                products.push(row);
            }
            // Basis entries carry the digest of the diagram each class maps
            // to, so presented tables can be lined up against diagram tables.
            let basis = algebra
                .classes
                .reps
                .iter()
                .map(|w| {
                    let (_, d) = crate::iso::phi_bprime(w, params)?;
                    Ok(format!("{w} @ {}", short_digest(&d.encode())))
                })
                .collect::<Result<Vec<String>>>()?;
            Ok(StructureTable {
                flavor,
                n,
                params: params.clone(),
                basis,
                identity,
                products,
            })
        }
    }
}

/// First sixteen hex digits of the content hash; used to tag presented basis
/// words with their image diagrams.
pub fn short_digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Content digest identifying a table: version, flavor, size, backend and
/// parameter point.
pub fn table_digest<F: Field>(n: u16, flavor: Flavor, params: &ParameterSet<F>) -> String {
    let mut hasher = Sha256::new();
    let mut text = format!(
        "v{TABLE_FORMAT_VERSION}|{}|n{}|{}",
        flavor.name(),
        n,
        F::backend_id()
    );
    for (name, value) in params.as_strings() {
        text.push_str(&format!("|{name}={value}"));
    }
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn cache_path(dir: &Path, digest: &str) -> PathBuf {
    dir.join(format!("table-{digest}.json"))
}

/// Loads the table document from the cache or builds and stores it. The write
/// is atomic (temp file plus rename). Returns the document and whether it was
/// served from the cache.
pub fn load_or_build_table<F: Field>(
    cache_dir: Option<&Path>,
    n: u16,
    flavor: Flavor,
    params: &ParameterSet<F>,
) -> Result<(Value, bool)> {
    let digest = table_digest::<F>(n, flavor, params);
    if let Some(dir) = cache_dir {
        let path = cache_path(dir, &digest);
        if path.exists() {
            let text = fs::read_to_string(&path)?;
            let value: Value = serde_json::from_str(&text)?;
            return Ok((value, true));
        }
    }
    let table = build_table(n, flavor, params)?;
    let value = table.to_json();
    if let Some(dir) = cache_dir {
        fs::create_dir_all(dir)?;
        let path = cache_path(dir, &digest);
        let tmp = dir.join(format!("table-{digest}.json.tmp"));
        fs::write(&tmp, serde_json::to_string_pretty(&value)?)?;
        fs::rename(&tmp, &path)?;
    }
    Ok((value, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn params() -> ParameterSet<Rat> {
        ParameterSet::default_point()
    }

    #[test]
    fn tl_table_closes_and_has_identity() {
        let t = build_table(3, Flavor::Tl, &params()).unwrap();
        assert_eq!(t.dim(), 5);
        for i in 0..t.dim() {
            let id = AlgebraElement::term(t.identity as u32, Rat::new(1, 1));
            let x = AlgebraElement::term(i as u32, Rat::new(1, 1));
            assert_eq!(t.mul_elements(&id, &x), x);
            assert_eq!(t.mul_elements(&x, &id), x);
        }
    }

    #[test]
    fn bprime_table_closes_at_n1() {
        let t = build_table(1, Flavor::LrBlob, &params()).unwrap();
        assert_eq!(t.dim(), 5);
        assert!(t.associativity_sample(7, 500));
    }

    #[test]
    fn left_and_right_blob_generators_commute() {
        // e and f have disjoint support; their product is the same either way.
        for n in 2..=5u16 {
            let p = params();
            let e = crate::diagram::generator_diagram(0, n).unwrap();
            let f = crate::diagram::generator_diagram(n as usize, n).unwrap();
            let ef = multiply(&e, &f, &p).unwrap();
            let fe = multiply(&f, &e, &p).unwrap();
            assert_eq!(ef, fe);
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let t = build_table(2, Flavor::LrBlob, &params()).unwrap();
        let doc = t.to_json();
        let text = serde_json::to_string(&doc).unwrap();
        let parsed =
            StructureTable::<Rat>::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&parsed.to_json()).unwrap(), text);
        assert_eq!(parsed.dim(), t.dim());
    }

    #[test]
    fn cache_round_trip_is_byte_identical() {
        let dir = std::env::temp_dir().join(format!("symblob-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let p = params();
        let (first, hit1) = load_or_build_table(Some(&dir), 2, Flavor::Tl, &p).unwrap();
        assert!(!hit1);
        let (second, hit2) = load_or_build_table(Some(&dir), 2, Flavor::Tl, &p).unwrap();
        assert!(hit2);
        assert_eq!(
            serde_json::to_string(&first).unwrap(),
            serde_json::to_string(&second).unwrap()
        );
        let _ = std::fs::remove_dir_all(&dir);
    }
}
