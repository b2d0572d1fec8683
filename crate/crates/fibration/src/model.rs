use std::collections::BTreeMap;

use dpz_core::{int, pair, solve_prescribed_pairing, CurveConfig, Divisor, Rational};
use dpz_dynkin::{DynkinType, Family, Prime, Summand};
use num_traits::{One, Zero};

use crate::classify::FiberGraph;
use crate::data::{Condition, FibrationData};
use crate::error::{FibrationError, Result};

/// Shape of a singular fiber.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FiberKind {
    /// A chain `E′ − D_1 − … − D_{α−1} − E` with (−1)-curves at both ends.
    I1,
    /// A chain of (−2)-curves through `D_0` with (−1)-curves at both ends.
    I2,
    /// Two (−2)-leaves on a chain ending in one (−1)-curve of multiplicity 2.
    II,
}

/// One singular fiber: its components in index order with multiplicities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fiber {
    /// 1-based position among all singular fibers (I-1, then I-2, then II).
    pub index: usize,
    pub kind: FiberKind,
    pub components: Vec<(String, i64)>,
    pub edges: Vec<(String, String)>,
    /// The component meeting `D0`.
    pub section_component: String,
    /// The component meeting `Dinf`, when there are two sections.
    pub dinf_component: Option<String>,
}

impl Fiber {
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.components.iter().map(|(l, _)| l.as_str())
    }

    pub fn multiplicity(&self, label: &str) -> Option<i64> {
        self.components
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, m)| *m)
    }

    /// The fiber as a divisor, `Σ mult·component`.
    pub fn class(&self) -> Divisor {
        Divisor::from_terms(
            Rational::zero(),
            self.components.iter().map(|(l, m)| (l.clone(), int(*m))),
        )
    }

    /// The (−1)-components, `E{i}` first.
    pub fn minus_one_components(&self) -> Vec<String> {
        let i = self.index;
        match self.kind {
            FiberKind::II => vec![format!("E{i}")],
            _ => vec![format!("E{i}"), format!("E{i}p")],
        }
    }

    /// The dual graph with vertex order matching `components`; also returns the
    /// vertex meeting `D0`.
    pub fn graph(&self, config: &CurveConfig) -> Result<(FiberGraph, usize)> {
        let pos = |l: &str| {
            self.components
                .iter()
                .position(|(c, _)| c == l)
                .expect("own label")
        };
        let self_ints = self
            .components
            .iter()
            .map(|(l, _)| Ok(config.curve(l)?.self_int))
            .collect::<Result<Vec<_>>>()?;
        let edges = self.edges.iter().map(|(a, b)| (pos(a), pos(b))).collect();
        Ok((
            FiberGraph { self_ints, edges },
            pos(&self.section_component),
        ))
    }
}

/// Curve configuration of the smooth surface together with its fibration structure.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    data: FibrationData,
    config: CurveConfig,
    fibers: Vec<Fiber>,
    d0_dinf: i64,
    corrections: BTreeMap<String, Divisor>,
}

/// Builds the model; `data` should already be validated.
pub fn build_curve_config(data: &FibrationData) -> Result<SurfaceModel> {
    SurfaceModel::new(data.clone())
}

/// `f*` of a ℚ-divisor on the singular surface written in non-contracted labels.
pub fn pullback(model: &SurfaceModel, divisor: &BTreeMap<String, Rational>) -> Result<Divisor> {
    model.pullback(divisor)
}

fn chain_label(i: usize, lambda: i64) -> String {
    format!("D{i}_{lambda}")
}

pub(crate) fn make_fibers(data: &FibrationData) -> Vec<Fiber> {
    let two = data.condition == Condition::StarStar;
    let mut fibers = Vec::with_capacity(data.fiber_count());
    let mut index = 0;
    for &a in &data.alphas {
        index += 1;
        let mut labels = vec![format!("E{index}p")];
        labels.extend((1..a).map(|l| chain_label(index, l)));
        labels.push(format!("E{index}"));
        let edges = labels
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        fibers.push(Fiber {
            index,
            kind: FiberKind::I1,
            section_component: labels[0].clone(),
            dinf_component: two.then(|| format!("E{index}")),
            components: labels.into_iter().map(|l| (l, 1)).collect(),
            edges,
        });
    }
    for &(b, bp) in &data.betas {
        index += 1;
        let root = chain_label(index, 0);
        let mut branch1 = vec![root.clone()];
        branch1.extend((1..b).map(|l| chain_label(index, l)));
        branch1.push(format!("E{index}"));
        let mut branch2 = vec![root.clone()];
        branch2.extend((b + 1..b + bp).map(|l| chain_label(index, l)));
        branch2.push(format!("E{index}p"));
        let mut edges: Vec<(String, String)> = branch1
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        edges.extend(branch2.windows(2).map(|w| (w[0].clone(), w[1].clone())));
        let dinf = if b >= 2 {
            chain_label(index, b - 1)
        } else {
            root.clone()
        };
        let components = branch1
            .into_iter()
            .chain(branch2.into_iter().skip(1))
            .map(|l| (l, 1))
            .collect();
        fibers.push(Fiber {
            index,
            kind: FiberKind::I2,
            components,
            edges,
            section_component: root,
            dinf_component: two.then_some(dinf),
        });
    }
    for &g in &data.gammas {
        index += 1;
        let leaf0 = chain_label(index, 0);
        let leaf1 = chain_label(index, 1);
        let mut chain: Vec<String> = (2..g).map(|l| chain_label(index, l)).collect();
        chain.push(format!("E{index}"));
        let mut edges = vec![
            (leaf0.clone(), chain[0].clone()),
            (leaf1.clone(), chain[0].clone()),
        ];
        edges.extend(chain.windows(2).map(|w| (w[0].clone(), w[1].clone())));
        let dinf = if g >= 3 { leaf1.clone() } else { leaf0.clone() };
        let mut components = vec![(leaf0.clone(), 1), (leaf1, 1)];
        components.extend(chain.into_iter().map(|l| (l, 2)));
        fibers.push(Fiber {
            index,
            kind: FiberKind::II,
            components,
            edges,
            section_component: leaf0,
            dinf_component: two.then_some(dinf),
        });
    }
    fibers
}

/// `Q²` for the divisor `Q` supported on the fiber minus its `D0`-component with
/// `Q·C = Dinf·C` for every such component `C`.
fn fiber_offset_square(fiber: &Fiber, k2: i64) -> Result<Rational> {
    let Some(target) = &fiber.dinf_component else {
        return Ok(Rational::zero());
    };
    if *target == fiber.section_component {
        return Ok(Rational::zero());
    }
    let mut b = CurveConfig::builder(k2);
    for (l, _) in &fiber.components {
        let self_int = if l.starts_with('E') { -1 } else { -2 };
        b.add_curve(l.clone(), self_int, false);
    }
    for (x, y) in &fiber.edges {
        b.add_meet(x.clone(), y.clone(), 1);
    }
    let local = b.build()?;
    let support: Vec<&str> = fiber
        .labels()
        .filter(|l| *l != fiber.section_component)
        .collect();
    let targets = BTreeMap::from([(target.clone(), Rational::one())]);
    let q = solve_prescribed_pairing(&local, &support, &targets)?;
    Ok(q.coeff(target))
}

/// `D0·Dinf`, forced by `Dinf ≡ D0 + kF + ΣQ_j` and `Dinf² = −m_inf`.
pub(crate) fn section_intersection(data: &FibrationData, fibers: &[Fiber]) -> Result<i64> {
    let mut total = Rational::zero();
    for f in fibers {
        total += fiber_offset_square(f, data.k2())?;
    }
    let twice_k = int(data.m0 - data.m_inf_value()) - total;
    if !twice_k.is_integer() || !(twice_k.to_integer() % 2u8).is_zero() {
        return Err(FibrationError::InvalidInput(format!(
            "no second section with these fibers: 2k = {twice_k} is not an even integer"
        )));
    }
    let k: i64 = (twice_k.to_integer() / 2u8)
        .try_into()
        .map_err(|_| FibrationError::InvalidInput("k out of range".into()))?;
    let meet = k - data.m0;
    if meet < 0 {
        return Err(FibrationError::InvalidInput(format!(
            "no second section with these fibers: D0·Dinf = {meet} < 0"
        )));
    }
    Ok(meet)
}

impl SurfaceModel {
    pub fn new(data: FibrationData) -> Result<Self> {
        let fibers = make_fibers(&data);
        let two = data.condition == Condition::StarStar;
        let d0_dinf = if two {
            section_intersection(&data, &fibers)?
        } else {
            0
        };
        let mut b = CurveConfig::builder(data.k2());
        b.add_curve("D0", -data.m0, true);
        if two {
            b.add_curve("Dinf", -data.m_inf_value(), true);
        }
        b.add_curve("F", 0, false);
        b.add_meet("D0", "F", 1);
        if two {
            b.add_meet("Dinf", "F", 1);
            if d0_dinf > 0 {
                b.add_meet("D0", "Dinf", d0_dinf);
            }
            if d0_dinf == 1 {
                b.add_curve("F0", 0, false);
                b.add_meet("F0", "D0", 1);
                b.add_meet("F0", "Dinf", 1);
            }
        }
        for f in &fibers {
            for (l, _) in &f.components {
                let minus_one = l.starts_with('E');
                b.add_curve(l.clone(), if minus_one { -1 } else { -2 }, !minus_one);
            }
            for (x, y) in &f.edges {
                b.add_meet(x.clone(), y.clone(), 1);
            }
            b.add_meet("D0", f.section_component.clone(), 1);
            if let Some(c) = &f.dinf_component {
                b.add_meet("Dinf", c.clone(), 1);
            }
        }
        if has_gamma_shape(&data) {
            b.add_curve("Gamma", -1, false);
            b.add_meet("Gamma", "F", 1);
            for i in 1..=data.r() {
                b.add_meet("Gamma", format!("E{i}"), 1);
            }
            b.add_meet("Gamma", chain_label(data.r() + 1, 1), 1);
        }
        let config = b.build()?;
        if !config.contracted_negative_definite() {
            return Err(FibrationError::InvalidInput(
                "contracted curves are not negative definite".into(),
            ));
        }
        let contracted: Vec<String> = config
            .contracted_labels()
            .into_iter()
            .map(String::from)
            .collect();
        let mut corrections = BTreeMap::new();
        for c in config.curves().iter().filter(|c| !c.contracted) {
            let targets: BTreeMap<String, Rational> = contracted
                .iter()
                .map(|d| Ok((d.clone(), int(-config.meet(&c.label, d)?))))
                .collect::<Result<_>>()?;
            let corr = solve_prescribed_pairing(&config, &contracted, &targets)?;
            corrections.insert(c.label.clone(), corr);
        }
        Ok(SurfaceModel {
            data,
            config,
            fibers,
            d0_dinf,
            corrections,
        })
    }

    pub fn data(&self) -> &FibrationData {
        &self.data
    }

    pub fn config(&self) -> &CurveConfig {
        &self.config
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn fiber(&self, index: usize) -> Option<&Fiber> {
        index.checked_sub(1).and_then(|i| self.fibers.get(i))
    }

    /// `D0·Dinf`; 0 with a single section.
    pub fn section_meet(&self) -> i64 {
        self.d0_dinf
    }

    pub fn has_gamma(&self) -> bool {
        self.config.contains("Gamma")
    }

    pub fn has_f0(&self) -> bool {
        self.config.contains("F0")
    }

    /// Classes of all singular fibers.
    pub fn fiber_classes(&self) -> Vec<Divisor> {
        self.fibers.iter().map(Fiber::class).collect()
    }

    /// Labels of the curves that survive on the singular surface.
    pub fn visible_labels(&self) -> Vec<&str> {
        self.config
            .curves()
            .iter()
            .filter(|c| !c.contracted)
            .map(|c| c.label.as_str())
            .collect()
    }

    /// `f*X = X̃ + Σ c_C C` over contracted `C`, for a non-contracted curve `X`.
    pub fn pullback_curve(&self, label: &str) -> Result<Divisor> {
        let corr = self.corrections.get(label).ok_or_else(|| {
            FibrationError::InvalidInput(format!(
                "`{label}` is not a non-contracted curve of the model"
            ))
        })?;
        Ok(corr.clone() + Divisor::curve(label))
    }

    pub fn pullback(&self, divisor: &BTreeMap<String, Rational>) -> Result<Divisor> {
        let mut out = Divisor::zero();
        for (l, c) in divisor {
            out = out + self.pullback_curve(l)?.scale(c);
        }
        Ok(out)
    }

    /// Intersection number on the singular surface, computed through pullbacks.
    pub fn s_pair(
        &self,
        a: &BTreeMap<String, Rational>,
        b: &BTreeMap<String, Rational>,
    ) -> Result<Rational> {
        Ok(pair(&self.config, &self.pullback(a)?, &self.pullback(b)?)?)
    }

    /// The Du Val type of the contracted curves, or `None` if some contracted
    /// curve is not a (−2)-curve or a cluster is not an ADE graph.
    pub fn dynkin_type(&self) -> Option<DynkinType> {
        dynkin_type_of(&self.config)
    }
}

/// A single section with one II fiber of length 4, no I-2 fibers and `m0 = α`:
/// the shape carrying the extra (−1)-curve `Gamma`.
pub(crate) fn has_gamma_shape(data: &FibrationData) -> bool {
    data.condition == Condition::Star
        && data.s() == 0
        && data.gammas == [4]
        && data.m0 == data.alpha()
}

/// Du Val type of the contracted part of `config`.
pub fn dynkin_type_of(config: &CurveConfig) -> Option<DynkinType> {
    let labels = config.contracted_labels();
    if labels
        .iter()
        .any(|l| config.curve(l).map(|c| c.self_int != -2).unwrap_or(true))
    {
        return None;
    }
    let n = labels.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && config.meet(labels[i], labels[j]).unwrap_or(0) > 0)
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && config.meet(labels[i], labels[j]).unwrap_or(0) > 1 {
                return None;
            }
        }
    }
    let mut seen = vec![false; n];
    let mut summands = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            for &j in &adj[comp[k]] {
                if !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        summands.push(ade_of_tree(&comp, &adj)?);
    }
    DynkinType::new(summands, Prime::None).ok()
}

fn ade_of_tree(comp: &[usize], adj: &[Vec<usize>]) -> Option<Summand> {
    let size = comp.len();
    let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != size {
        return None;
    }
    let rank = u32::try_from(size).ok()?;
    let branch: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&v| adj[v].len() >= 3)
        .collect();
    match branch.as_slice() {
        [] => Some(Summand::a(rank)),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&first| {
                    let (mut prev, mut cur, mut len) = (*c, first, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Summand::new(Family::D, rank).ok(),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Summand::new(Family::E, rank).ok(),
                _ => None,
            }
        }
        _ => None,
    }
}
