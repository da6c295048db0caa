use serde::{Deserialize, Serialize};

use super::anf::{max_variable_index, Anf};
use super::boolean::BooleanFunction;
use crate::error::{Error, Result};

/// A map F_2^n -> F_2^m stored as its m coordinate functions.
///
/// Evaluation packs coordinate f_i into bit i-1 of the output.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorialFunction {
    n: usize,
    coords: Vec<BooleanFunction>,
}

/// JSON form `{"n":..,"m":..,"coords":["x1*x2 + ..", ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FunctionRecord {
    pub n: usize,
    pub m: usize,
    pub coords: Vec<String>,
}

impl VectorialFunction {
    pub fn new(coords: Vec<BooleanFunction>) -> Result<Self> {
        let first = coords
            .first()
            .ok_or_else(|| Error::invalid("a vectorial function needs at least one coordinate"))?;
        let n = first.num_vars();
        if coords.iter().any(|c| c.num_vars() != n) {
            return Err(Error::invalid("coordinates have different variable counts"));
        }
        if coords.len() > n.max(1) {
            return Err(Error::invalid(format!("m={} exceeds n={n}", coords.len())));
        }
        Ok(VectorialFunction { n, coords })
    }

    pub fn from_boolean(f: BooleanFunction) -> Self {
        VectorialFunction {
            n: f.num_vars(),
            coords: vec![f],
        }
    }

    pub fn from_anfs(anfs: &[Anf]) -> Result<Self> {
        Self::new(anfs.iter().map(Anf::to_table).collect())
    }

    /// Builds F from its value list: `values[x]` packs F(x) with f_1 in bit 0.
    pub fn from_values(n: usize, m: usize, values: &[u32]) -> Result<Self> {
        if values.len() != 1 << n {
            return Err(Error::invalid("value list length is not 2^n"));
        }
        let coords = (0..m)
            .map(|i| BooleanFunction::from_fn(n, |x| values[x as usize] >> i & 1 == 1))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    /// Parses coordinate ANFs in the `x1*x2 + ...` grammar, or the digit shorthand.
    pub fn parse(n: usize, coords: &[&str], digits: bool) -> Result<Self> {
        let anfs = coords
            .iter()
            .map(|c| {
                if digits {
                    Anf::parse_digits(n, c)
                } else {
                    Anf::parse(n, c)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_anfs(&anfs)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_outputs(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BooleanFunction] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BooleanFunction {
        &self.coords[i]
    }

    #[inline]
    pub fn eval(&self, x: u32) -> u32 {
        self.coords
            .iter()
            .enumerate()
            .fold(0, |acc, (i, c)| acc | (c.get(x) as u32) << i)
    }

    pub fn values(&self) -> Vec<u32> {
        (0..1u32 << self.n).map(|x| self.eval(x)).collect()
    }

    /// The component x -> <b, F(x)> for nonzero b.
    pub fn component(&self, b: u32) -> Result<BooleanFunction> {
        let m = self.num_outputs();
        if b == 0 {
            return Err(Error::invalid("the zero component is excluded"));
        }
        if b >> m != 0 {
            return Err(Error::invalid(format!(
                "component mask {b:#x} exceeds m={m}"
            )));
        }
        let mut out = BooleanFunction::zero(self.n)?;
        for (i, c) in self.coords.iter().enumerate() {
            if b >> i & 1 == 1 {
                out ^= c;
            }
        }
        Ok(out)
    }

    /// All 2^m - 1 nonzero components, indexed by b - 1.
    pub fn components(&self) -> Vec<BooleanFunction> {
        (1..1u32 << self.num_outputs())
            .map(|b| self.component(b).expect("b is nonzero and in range"))
            .collect()
    }

    pub fn anfs(&self) -> Vec<Anf> {
        self.coords.iter().map(Anf::from_table).collect()
    }

    /// Algebraic degree: the maximum over coordinates.
    pub fn degree(&self) -> u32 {
        self.anfs().iter().map(Anf::degree).max().unwrap_or(0)
    }

    pub fn graph(&self) -> GraphSet {
        GraphSet {
            n: self.n,
            m: self.num_outputs(),
            elements: (0..1u32 << self.n)
                .map(|x| x | self.eval(x) << self.n)
                .collect(),
        }
    }

    /// Appends a coordinate, giving an (n, m+1) function.
    pub fn extend(&self, f: BooleanFunction) -> Result<Self> {
        let mut coords = self.coords.clone();
        coords.push(f);
        Self::new(coords)
    }

    /// Removes the affine part of every coordinate.
    pub fn strip_affine(&self) -> Self {
        VectorialFunction {
            n: self.n,
            coords: self
                .anfs()
                .iter()
                .map(|a| a.strip_affine().to_table())
                .collect(),
        }
    }

    pub fn to_record(&self) -> FunctionRecord {
        FunctionRecord {
            n: self.n,
            m: self.num_outputs(),
            coords: self.anfs().iter().map(Anf::to_string).collect(),
        }
    }

    pub fn from_record(record: &FunctionRecord) -> Result<Self> {
        if record.coords.len() != record.m {
            return Err(Error::parse(format!(
                "record declares m={} but lists {} coordinates",
                record.m,
                record.coords.len()
            )));
        }
        let coords: Vec<&str> = record.coords.iter().map(String::as_str).collect();
        Self::parse(record.n, &coords, false)
    }

    /// Parses either a JSON record or a `;`-separated list of coordinate ANFs.
    /// When `n` is not given it is inferred from the highest variable mentioned.
    pub fn parse_input(text: &str, n: Option<usize>, digits: bool) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            let record: FunctionRecord = serde_json::from_str(t)?;
            if let Some(n) = n {
                if n != record.n {
                    return Err(Error::invalid(format!(
                        "record has n={} but n={n} was requested",
                        record.n
                    )));
                }
            }
            return Self::from_record(&record);
        }
        let parts: Vec<&str> = t
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        if parts.is_empty() {
            return Err(Error::parse("no coordinates given"));
        }
        let n = match n {
            Some(n) => n,
            None if digits => parts
                .iter()
                .flat_map(|p| p.chars().filter_map(|c| c.to_digit(10)))
                .max()
                .unwrap_or(0) as usize,
            None => parts
                .iter()
                .map(|p| max_variable_index(p))
                .max()
                .unwrap_or(0),
        };
        if n == 0 {
            return Err(Error::invalid(
                "cannot infer the number of variables; pass it explicitly",
            ));
        }
        Self::parse(n, &parts, digits)
    }
}

/// Graph {(x, F(x))} of F, encoded as x | F(x) << n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphSet {
    pub n: usize,
    pub m: usize,
    pub elements: Vec<u32>,
}

impl GraphSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Support {x : f(x) = 1} in increasing order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupportSet {
    pub n: usize,
    pub elements: Vec<u32>,
}

impl SupportSet {
    pub fn of(f: &BooleanFunction) -> Self {
        SupportSet {
            n: f.num_vars(),
            elements: (0..f.len() as u32).filter(|&x| f.get(x)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// (x, w) -> f(x) + h(w), with x occupying the low bits.
pub fn direct_sum(f: &BooleanFunction, h: &BooleanFunction) -> Result<BooleanFunction> {
    let n = f.num_vars();
    let k = h.num_vars();
    let mask = (1u32 << n) - 1;
    BooleanFunction::from_fn(n + k, |z| f.get(z & mask) ^ h.get(z >> n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: usize, s: &str) -> BooleanFunction {
        Anf::parse(n, s).unwrap().to_table()
    }

    #[test]
    fn components_are_linear_combinations() {
        let v = VectorialFunction::new(vec![f(4, "x1*x3"), f(4, "x2*x4 + x1")]).unwrap();
        assert_eq!(v.component(1).unwrap(), f(4, "x1*x3"));
        assert_eq!(v.component(3).unwrap(), f(4, "x1*x3 + x2*x4 + x1"));
        assert!(v.component(0).is_err());
        assert!(v.component(4).is_err());
        assert_eq!(v.components().len(), 3);
    }

    #[test]
    fn graph_of_zero_function() {
        let v = VectorialFunction::from_boolean(BooleanFunction::zero(2).unwrap());
        assert_eq!(v.graph().elements, vec![0, 1, 2, 3]);
    }

    #[test]
    fn support_of_and_gate() {
        assert_eq!(SupportSet::of(&f(2, "x1*x2")).elements, vec![3]);
        assert!(SupportSet::of(&BooleanFunction::zero(3).unwrap()).is_empty());
    }

    #[test]
    fn direct_sum_of_two_and_gates() {
        let s = direct_sum(&f(2, "x1*x2"), &f(2, "x1*x2")).unwrap();
        assert_eq!(s, f(4, "x1*x2 + x3*x4"));
    }

    #[test]
    fn record_round_trip() {
        let v =
            VectorialFunction::parse(6, &["14 ⊕ 25 ⊕ 36", "15 ⊕ 16 ⊕ 24 ⊕ 25 ⊕ 34"], true).unwrap();
        let r = v.to_record();
        assert_eq!(r.coords[0], "x1*x4 + x2*x5 + x3*x6");
        assert_eq!(VectorialFunction::from_record(&r).unwrap(), v);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            VectorialFunction::parse_input(&json, None, false).unwrap(),
            v
        );
        assert_eq!(
            VectorialFunction::parse_input("x1*x4 + x2*x5 + x3*x6; x1*x5", Some(6), false)
                .unwrap()
                .num_outputs(),
            2
        );
    }

    #[test]
    fn rejects_too_many_outputs() {
        let c = BooleanFunction::zero(1).unwrap();
        assert!(VectorialFunction::new(vec![c.clone(), c]).is_err());
    }
}
