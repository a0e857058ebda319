//! Chart labels of nu-projective superspaces, their transition maps, and the
//! canonical line-bundle cocycle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::expr::{pretty_symbol, subscript, write_symbol};
use crate::grassmann::{GrassmannElement, Substitution};
use crate::numeric::Point;
use crate::report::{Check, Detail, Report};
use crate::symbol::{Registry, SymbolId, SymbolKind};

/// One slot of a chart label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelEntry {
    One,
    OneNu,
    Symbol(SymbolId),
}

#[derive(Clone, Debug)]
pub struct ChartLabel {
    index: usize,
    entries: Vec<LabelEntry>,
    /// Value of each slot; `1nu` reads as the chart's odd unit.
    values: Vec<GrassmannElement>,
    /// `nu` of each slot value.
    partners: Vec<GrassmannElement>,
    divider: usize,
}

impl ChartLabel {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn entries(&self) -> &[LabelEntry] {
        &self.entries
    }

    /// Number of even slots, i.e. the position of the divider line.
    pub fn divider(&self) -> usize {
        self.divider
    }

    /// Value of slot `s` (1-based).
    pub fn value(&self, s: usize) -> &GrassmannElement {
        &self.values[s - 1]
    }

    /// `nu` of slot `s` (1-based).
    pub fn partner(&self, s: usize) -> &GrassmannElement {
        &self.partners[s - 1]
    }
}

/// Images of every chart-`source` symbol in chart-`target` symbols.
#[derive(Clone, Debug)]
pub struct TransitionMap {
    source: usize,
    target: usize,
    map: Substitution,
}

impl TransitionMap {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn substitution(&self) -> &Substitution {
        &self.map
    }

    pub fn image(&self, s: SymbolId) -> Option<&GrassmannElement> {
        self.map.get(s)
    }

    /// Pulls an expression in source symbols back to target symbols.
    pub fn apply(&self, x: &GrassmannElement) -> Result<GrassmannElement> {
        x.substitute(&self.map)
    }
}

#[derive(Debug)]
pub struct ChartAtlas {
    m: usize,
    n: usize,
    reg: Registry,
    labels: Vec<ChartLabel>,
}

impl ChartAtlas {
    /// Builds the `m+n+1` labelled charts of nu-P^{m|n}.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 1 || n < 1 {
            return Err(Error::BadDimensions(format!("nu-P^{{{m}|{n}}} needs m, n >= 1")));
        }
        let mut reg = Registry::new();
        let charts = m + n + 1;
        let mut labels = Vec::with_capacity(charts);
        for i in 1..=charts {
            let mut z = Vec::new();
            let mut e = Vec::new();
            for k in 1..=m {
                z.push(reg.register_pair(&format!("z{k}.{i}"), &format!("nuz{k}.{i}"), SymbolKind::EvenCoordinate, Some(i))?);
            }
            for l in 1..=n {
                e.push(reg.register_pair(&format!("e{l}.{i}"), &format!("nue{l}.{i}"), SymbolKind::OddCoordinate, Some(i))?);
            }
            let unit = reg.register(&format!("nu1.{i}"), SymbolKind::OddUnit, Some(i))?;
            let mut entries = Vec::with_capacity(charts);
            if i <= m + 1 {
                let mut zs = z.iter();
                for s in 1..=m + 1 {
                    entries.push(if s == i { LabelEntry::One } else { LabelEntry::Symbol(zs.next().unwrap().0) });
                }
                entries.extend(e.iter().map(|&(x, _)| LabelEntry::Symbol(x)));
            } else {
                entries.extend(z.iter().map(|&(x, _)| LabelEntry::Symbol(x)));
                entries.push(LabelEntry::Symbol(e[0].1));
                let mut es = e[1..].iter();
                for s in m + 2..=charts {
                    entries.push(if s == i { LabelEntry::OneNu } else { LabelEntry::Symbol(es.next().unwrap().0) });
                }
            }
            let one = GrassmannElement::one().with_tag(reg.tag())?;
            let unit_el = GrassmannElement::symbol(&reg, unit);
            let mut values = Vec::with_capacity(charts);
            let mut partners = Vec::with_capacity(charts);
            for entry in &entries {
                let (v, p) = match entry {
                    LabelEntry::One => (one.clone(), unit_el.clone()),
                    LabelEntry::OneNu => (unit_el.clone(), one.clone()),
                    LabelEntry::Symbol(x) => {
                        let partner = reg.partner(*x).expect("coordinates are registered in pairs");
                        (GrassmannElement::symbol(&reg, *x), GrassmannElement::symbol(&reg, partner))
                    }
                };
                values.push(v);
                partners.push(p);
            }
            labels.push(ChartLabel { index: i, entries, values, partners, divider: m + 1 });
        }
        Ok(ChartAtlas { m, n, reg, labels })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chart_count(&self) -> usize {
        self.labels.len()
    }

    pub fn registry(&self) -> &Registry {
        &self.reg
    }

    /// Lets later stages add global symbols (partitions, parameters).
    pub fn registry_mut(&mut self) -> &mut Registry {
        &mut self.reg
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.chart_count() {
            return Err(Error::IndexOutOfRange { index: i, max: self.chart_count() });
        }
        Ok(())
    }

    pub fn label(&self, i: usize) -> Result<&ChartLabel> {
        self.check_index(i)?;
        Ok(&self.labels[i - 1])
    }

    pub fn labels(&self) -> &[ChartLabel] {
        &self.labels
    }

    /// `p(i)`: 0 for standard charts, 1 for nonstandard ones.
    pub fn index_parity(&self, i: usize) -> u8 {
        u8::from(i > self.m + 1)
    }

    pub fn is_standard(&self, i: usize) -> bool {
        self.index_parity(i) == 0
    }

    fn named(&self, name: String) -> SymbolId {
        self.reg.lookup(&name).unwrap_or_else(|| panic!("no symbol {name}"))
    }

    pub fn z(&self, k: usize, chart: usize) -> SymbolId {
        self.named(format!("z{k}.{chart}"))
    }

    pub fn e(&self, l: usize, chart: usize) -> SymbolId {
        self.named(format!("e{l}.{chart}"))
    }

    pub fn nu_e(&self, l: usize, chart: usize) -> SymbolId {
        self.named(format!("nue{l}.{chart}"))
    }

    pub fn nu_z(&self, k: usize, chart: usize) -> SymbolId {
        self.named(format!("nuz{k}.{chart}"))
    }

    pub fn unit(&self, chart: usize) -> SymbolId {
        self.named(format!("nu1.{chart}"))
    }

    pub fn chart_symbols(&self, i: usize) -> Vec<SymbolId> {
        self.reg.chart_symbols(i)
    }

    pub fn even_chart_symbols(&self, i: usize) -> Vec<SymbolId> {
        self.chart_symbols(i).into_iter().filter(|s| s.is_even()).collect()
    }

    /// `M_j(A_i)`: slot `j` of chart `i`, with `1nu` read as the odd unit.
    pub fn entry_m(&self, j: usize, i: usize) -> Result<GrassmannElement> {
        self.check_index(j)?;
        Ok(self.label(i)?.value(j).clone())
    }

    /// `M'_j(A_i) = nu^{p(j)}(M_j(A_i))`, always even.
    pub fn entry_m_prime(&self, j: usize, i: usize) -> Result<GrassmannElement> {
        self.check_index(j)?;
        let label = self.label(i)?;
        Ok(if self.is_standard(j) { label.value(j).clone() } else { label.partner(j).clone() })
    }

    /// Solves the pasting equation: every chart-`i` slot value (and its
    /// partner) maps to the matching slot of `M'_i(A_j)^-1 A_j`.
    pub fn transition(&self, i: usize, j: usize) -> Result<TransitionMap> {
        let source = self.label(i)?;
        let target = self.label(j)?;
        let mut map = Substitution::new();
        if i == j {
            for s in self.chart_symbols(i) {
                map.insert(s, GrassmannElement::symbol(&self.reg, s))?;
            }
            return Ok(TransitionMap { source: i, target: j, map });
        }
        let z_inv = self.entry_m_prime(i, j)?.invert()?;
        for s in 0..self.chart_count() {
            for (own, image) in [(&source.values[s], &target.values[s]), (&source.partners[s], &target.partners[s])] {
                if let Some(x) = single_symbol(own) {
                    map.insert(x, &z_inv * image)?;
                }
            }
        }
        Ok(TransitionMap { source: i, target: j, map })
    }

    /// All transition maps, keyed by `(source, target)`.
    pub fn transitions(&self) -> Result<BTreeMap<(usize, usize), TransitionMap>> {
        let mut out = BTreeMap::new();
        for i in 1..=self.chart_count() {
            for j in 1..=self.chart_count() {
                out.insert((i, j), self.transition(i, j)?);
            }
        }
        Ok(out)
    }

    /// `h_ij = nu0^{p(i)+p(j)} M'_i(A_j)^-1`, in chart-`j` symbols.
    pub fn line_cocycle(&self, i: usize, j: usize) -> Result<GrassmannElement> {
        let inv = self.entry_m_prime(i, j)?.invert()?;
        Ok(if self.index_parity(i) == self.index_parity(j) { inv } else { inv.mul_nu0() })
    }

    /// Random values for the even symbols of chart `i`, moduli in `[1/2, 2]`.
    pub fn random_point<R: Rng + ?Sized>(&self, i: usize, rng: &mut R) -> Point {
        self.even_chart_symbols(i).into_iter().map(|s| (s, random_complex(rng))).collect()
    }

    /// Unicode rendering such as `A₁ = (1, z₁⁽¹⁾, z₂⁽¹⁾ | e₁⁽¹⁾)`.
    pub fn pretty_label(&self, i: usize) -> Result<String> {
        let label = self.label(i)?;
        let render = |e: &LabelEntry| match e {
            LabelEntry::One => String::from("1"),
            LabelEntry::OneNu => String::from("1ν"),
            LabelEntry::Symbol(s) => pretty_symbol(&self.reg, *s),
        };
        let even: Vec<String> = label.entries[..label.divider].iter().map(render).collect();
        let odd: Vec<String> = label.entries[label.divider..].iter().map(render).collect();
        Ok(format!("A{} = ({} | {})", subscript(i), even.join(", "), odd.join(", ")))
    }

    /// Text-format label row such as `(1 (z 1 1) (z 2 1) | (e 1 1))`.
    pub fn write_label(&self, i: usize) -> Result<String> {
        let label = self.label(i)?;
        let render = |e: &LabelEntry| match e {
            LabelEntry::One => String::from("1"),
            LabelEntry::OneNu => String::from("1nu"),
            LabelEntry::Symbol(s) => write_symbol(&self.reg, *s),
        };
        let even: Vec<String> = label.entries[..label.divider].iter().map(render).collect();
        let odd: Vec<String> = label.entries[label.divider..].iter().map(render).collect();
        Ok(format!("({} | {})", even.join(" "), odd.join(" ")))
    }
}

pub(crate) fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let r = rng.gen_range(0.5..2.0);
    let theta = rng.gen_range(0.0..TAU);
    Complex64::from_polar(r, theta)
}

fn single_symbol(x: &GrassmannElement) -> Option<SymbolId> {
    let mut terms = x.terms();
    let (m, nu0, c) = terms.next()?;
    if terms.next().is_some() || nu0 {
        return None;
    }
    if m.len() == 1 && c.is_one() {
        return Some(m.symbols()[0]);
    }
    if m.is_empty() {
        let (mono, k) = c.numerator().single_term()?;
        if c.denominator().is_one() && k.is_one() && mono.degree() == 1 {
            return Some(mono.factors()[0].0);
        }
    }
    None
}

fn atlas_tag(atlas: &ChartAtlas) -> String {
    format!("p{}|{}", atlas.m(), atlas.n())
}

/// Checks `g_ii = id`, `g_ji g_ij = id` and `g_jk g_ij = g_ik` on every chart
/// symbol.
pub fn verify_gluing(atlas: &ChartAtlas) -> Report {
    let mut report = Report::new("verify-gluing");
    let tag = atlas_tag(atlas);
    let maps = match atlas.transitions() {
        Ok(m) => m,
        Err(err) => {
            report.push(Check::fail(format!("gluing/{tag}/transitions"), err));
            return report;
        }
    };
    let charts = atlas.chart_count();
    let compose = |i: usize, j: usize, k: usize| -> Result<Vec<SymbolId>> {
        let first = &maps[&(i, j)];
        let second = &maps[&(j, k)];
        let direct = &maps[&(i, k)];
        let mut bad = Vec::new();
        for s in atlas.chart_symbols(i) {
            let via = second.apply(first.image(s).expect("total map"))?;
            if &via != direct.image(s).expect("total map") {
                bad.push(s);
            }
        }
        Ok(bad)
    };
    let record = |name: String, outcome: Result<Vec<SymbolId>>| match outcome {
        Ok(bad) if bad.is_empty() => Check::pass(name),
        Ok(bad) => Check::fail(name, "symbols differ").with(
            "symbols",
            Detail::List(bad.iter().map(|&s| Detail::Text(pretty_symbol(atlas.registry(), s))).collect()),
        ),
        Err(err) => Check::fail(name, err),
    };
    for i in 1..=charts {
        let id = &maps[&(i, i)];
        let ok = atlas
            .chart_symbols(i)
            .into_iter()
            .all(|s| id.image(s) == Some(&GrassmannElement::symbol(atlas.registry(), s)));
        report.push(Check::from_bool(format!("gluing/{tag}/identity/{i}"), ok));
    }
    for i in 1..=charts {
        for j in 1..=charts {
            if i != j {
                report.push(record(format!("gluing/{tag}/inverse/{i}-{j}"), compose(i, j, i)));
            }
        }
    }
    for i in 1..=charts {
        for j in 1..=charts {
            for k in 1..=charts {
                report.push(record(format!("gluing/{tag}/compose/{i}-{j}-{k}"), compose(i, j, k)));
            }
        }
    }
    report
}

/// Checks that every transition map commutes with `nu` where it is defined.
pub fn verify_equivariance(atlas: &ChartAtlas) -> Report {
    let mut report = Report::new("verify-gluing");
    let tag = atlas_tag(atlas);
    let reg = atlas.registry();
    for i in 1..=atlas.chart_count() {
        for j in 1..=atlas.chart_count() {
            let name = format!("equivariance/{tag}/{i}-{j}");
            let outcome = (|| -> Result<bool> {
                let t = atlas.transition(i, j)?;
                for s in atlas.chart_symbols(i) {
                    let Some(p) = reg.partner(s) else { continue };
                    let image = t.image(s).expect("total map");
                    if image.nu_apply(reg, atlas.unit(j))? != *t.image(p).expect("total map") {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            report.push(match outcome {
                Ok(ok) => Check::from_bool(name, ok),
                Err(err) => Check::fail(name, err),
            });
        }
    }
    report
}

/// Checks `h_jk h_ik^-1 h_ij = 1` exactly in chart `k` for every ordered
/// triple, plus a numeric cross-check at `samples` random points.
pub fn verify_line_cocycle<R: Rng + ?Sized>(atlas: &ChartAtlas, samples: usize, rng: &mut R) -> Report {
    let mut report = Report::new("verify-cocycle");
    let tag = atlas_tag(atlas);
    let maps = match atlas.transitions() {
        Ok(m) => m,
        Err(err) => {
            report.push(Check::fail(format!("cocycle/{tag}/transitions"), err));
            return report;
        }
    };
    let charts = atlas.chart_count();
    for i in 1..=charts {
        let ok = atlas.line_cocycle(i, i).map(|h| h.is_one()).unwrap_or(false);
        report.push(Check::from_bool(format!("cocycle/{tag}/unit/{i}"), ok));
    }
    for i in 1..=charts {
        for j in 1..=charts {
            let name = format!("cocycle/{tag}/inverse/{i}-{j}");
            let outcome = (|| -> Result<bool> {
                let h_ij = atlas.line_cocycle(i, j)?;
                let h_ji = maps[&(i, j)].apply(&atlas.line_cocycle(j, i)?)?;
                Ok((&h_ij * &h_ji).is_one())
            })();
            report.push(match outcome {
                Ok(ok) => Check::from_bool(name, ok),
                Err(err) => Check::fail(name, err),
            });
        }
    }
    for i in 1..=charts {
        for j in 1..=charts {
            for k in 1..=charts {
                let name = format!("cocycle/{tag}/triple/{i}-{j}-{k}");
                let outcome = (|| -> Result<(bool, f64)> {
                    let h_jk = atlas.line_cocycle(j, k)?;
                    let h_ik = atlas.line_cocycle(i, k)?;
                    let h_ij_raw = atlas.line_cocycle(i, j)?;
                    let h_ij = maps[&(j, k)].apply(&h_ij_raw)?;
                    let exact = (&(&h_jk * &h_ik.invert()?) * &h_ij).is_one();
                    let mut worst: f64 = 0.0;
                    for _ in 0..samples {
                        let point = atlas.random_point(k, rng);
                        let moved = move_point(atlas, &maps[&(j, k)], &point)?;
                        let a = h_jk.eval_numeric(&point)?;
                        let b = h_ik.eval_numeric(&point)?.invert()?;
                        let c = h_ij_raw.eval_numeric(&moved)?;
                        let product = &(&a * &b) * &c;
                        worst = worst.max(product.distance(&crate::numeric::NumericGrassmann::one()));
                    }
                    Ok((exact, worst))
                })();
                report.push(match outcome {
                    Ok((exact, worst)) => Check::from_bool(name, exact && worst <= 1e-12)
                        .with("exact", exact)
                        .with("max_residual", worst),
                    Err(err) => Check::fail(name, err),
                });
            }
        }
    }
    report
}

/// Coordinates in chart `map.source()` of a point given in chart
/// `map.target()`.
pub fn move_point(atlas: &ChartAtlas, map: &TransitionMap, point: &Point) -> Result<Point> {
    let mut out = Point::new();
    for s in atlas.even_chart_symbols(map.source()) {
        let v = map.image(s).expect("total map").eval_numeric(point)?;
        out.insert(s, v.body().0);
    }
    Ok(out)
}

/// Compares bodies of standard-chart transitions with the classical chart
/// change of CP^m built from homogeneous coordinates.
pub fn body_transition_check(atlas: &ChartAtlas) -> Report {
    let mut report = Report::new("verify-gluing");
    let tag = atlas_tag(atlas);
    let reg = atlas.registry();
    let m = atlas.m();
    for i in 1..=m + 1 {
        for j in 1..=m + 1 {
            let name = format!("body/{tag}/{i}-{j}");
            let outcome = (|| -> Result<bool> {
                let t = atlas.transition(i, j)?;
                let mut homogeneous = Vec::with_capacity(m + 1);
                let mut zs = (1..=m).map(|k| GrassmannElement::symbol(reg, atlas.z(k, j)));
                for s in 1..=m + 1 {
                    homogeneous.push(if s == j { GrassmannElement::one() } else { zs.next().unwrap() });
                }
                let w_i_inv = homogeneous[i - 1].invert()?;
                let ratios: Vec<GrassmannElement> =
                    (0..=m).filter(|&s| s != i - 1).map(|s| &homogeneous[s] * &w_i_inv).collect();
                for (k, ratio) in (1..=m).zip(ratios) {
                    if t.image(atlas.z(k, i)).expect("total map").body() != ratio {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            report.push(match outcome {
                Ok(ok) => Check::from_bool(name, ok),
                Err(err) => Check::fail(name, err),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym(atlas: &ChartAtlas, s: SymbolId) -> GrassmannElement {
        GrassmannElement::symbol(atlas.registry(), s)
    }

    #[test]
    fn golden_labels_p21() {
        let atlas = ChartAtlas::new(2, 1).unwrap();
        let labels: Vec<String> = (1..=4).map(|i| atlas.pretty_label(i).unwrap()).collect();
        assert_eq!(
            labels,
            [
                "A₁ = (1, z₁⁽¹⁾, z₂⁽¹⁾ | e₁⁽¹⁾)",
                "A₂ = (z₁⁽²⁾, 1, z₂⁽²⁾ | e₁⁽²⁾)",
                "A₃ = (z₁⁽³⁾, z₂⁽³⁾, 1 | e₁⁽³⁾)",
                "A₄ = (z₁⁽⁴⁾, z₂⁽⁴⁾, ν(e₁⁽⁴⁾) | 1ν)",
            ]
        );
        assert_eq!(atlas.write_label(4).unwrap(), "((z 1 4) (z 2 4) (nue 1 4) | 1nu)");
    }

    #[test]
    fn labels_p11_and_sizes() {
        let atlas = ChartAtlas::new(1, 1).unwrap();
        assert_eq!(atlas.pretty_label(3).unwrap(), "A₃ = (z₁⁽³⁾, ν(e₁⁽³⁾) | 1ν)");
        assert_eq!(ChartAtlas::new(3, 2).unwrap().chart_count(), 6);
        assert!(matches!(ChartAtlas::new(0, 1), Err(Error::BadDimensions(_))));
        let p32 = ChartAtlas::new(3, 2).unwrap();
        assert_eq!(p32.pretty_label(6).unwrap(), "A₆ = (z₁⁽⁶⁾, z₂⁽⁶⁾, z₃⁽⁶⁾, ν(e₁⁽⁶⁾) | e₂⁽⁶⁾, 1ν)");
        assert_eq!(p32.pretty_label(5).unwrap(), "A₅ = (z₁⁽⁵⁾, z₂⁽⁵⁾, z₃⁽⁵⁾, ν(e₁⁽⁵⁾) | 1ν, e₂⁽⁵⁾)");
    }

    #[test]
    fn m_prime_entries() {
        let atlas = ChartAtlas::new(2, 1).unwrap();
        assert_eq!(atlas.entry_m_prime(2, 1).unwrap(), sym(&atlas, atlas.z(1, 1)));
        assert_eq!(atlas.entry_m_prime(4, 3).unwrap(), sym(&atlas, atlas.nu_e(1, 3)));
        for i in 1..=4 {
            assert!(atlas.entry_m_prime(i, i).unwrap().is_one());
        }
        assert_eq!(atlas.entry_m_prime(5, 1), Err(Error::IndexOutOfRange { index: 5, max: 4 }));
    }

    #[test]
    fn transition_examples() {
        let atlas = ChartAtlas::new(2, 1).unwrap();
        let s = |id| sym(&atlas, id);
        let t12 = atlas.transition(1, 2).unwrap();
        let inv_z = s(atlas.z(1, 2)).invert().unwrap();
        assert_eq!(t12.image(atlas.z(1, 1)).unwrap(), &inv_z);
        assert_eq!(t12.image(atlas.z(2, 1)).unwrap(), &(s(atlas.z(2, 2)) * &inv_z));
        assert_eq!(t12.image(atlas.e(1, 1)).unwrap(), &(s(atlas.e(1, 2)) * &inv_z));

        let t41 = atlas.transition(4, 1).unwrap();
        let inv_nu = s(atlas.nu_e(1, 1)).invert().unwrap();
        assert_eq!(t41.image(atlas.z(1, 4)).unwrap(), &inv_nu);
        assert_eq!(t41.image(atlas.z(2, 4)).unwrap(), &(s(atlas.z(1, 1)) * &inv_nu));
        assert_eq!(t41.image(atlas.nu_e(1, 4)).unwrap(), &(s(atlas.z(2, 1)) * &inv_nu));

        let back = atlas.transition(2, 1).unwrap().apply(t12.image(atlas.e(1, 1)).unwrap()).unwrap();
        assert_eq!(back, s(atlas.e(1, 1)));
    }

    #[test]
    fn line_cocycle_examples() {
        let atlas = ChartAtlas::new(2, 1).unwrap();
        let s = |id| sym(&atlas, id);
        assert_eq!(atlas.line_cocycle(2, 1).unwrap(), s(atlas.z(1, 1)).invert().unwrap());
        assert_eq!(atlas.line_cocycle(4, 3).unwrap(), s(atlas.nu_e(1, 3)).invert().unwrap().mul_nu0());
        assert_eq!(atlas.line_cocycle(1, 4).unwrap(), s(atlas.z(1, 4)).invert().unwrap().mul_nu0());
    }

    #[test]
    fn gluing_and_cocycle_reports_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (m, n) in [(1, 1), (2, 1)] {
            let atlas = ChartAtlas::new(m, n).unwrap();
            let gluing = verify_gluing(&atlas);
            assert!(gluing.passed(), "{:?}", gluing.failures().next());
            let charts = atlas.chart_count();
            assert_eq!(gluing.checks.len(), charts + charts * (charts - 1) + charts.pow(3));
            assert!(verify_equivariance(&atlas).passed());
            let cocycle = verify_line_cocycle(&atlas, 5, &mut rng);
            assert!(cocycle.passed(), "{:?}", cocycle.failures().next());
            assert!(body_transition_check(&atlas).passed());
        }
    }
}
