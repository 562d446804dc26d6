use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::VariableId;

/// A monomial as a sparse exponent map. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(BTreeMap<VariableId, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: VariableId) -> Self {
        Monomial(BTreeMap::from([(v, 1)]))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VariableId, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m.add_exponent(v, e);
        }
        m
    }

    /// Product of the listed variables, with repetition.
    pub fn product(vars: impl IntoIterator<Item = VariableId>) -> Self {
        Monomial::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    fn add_exponent(&mut self, v: VariableId, e: u32) {
        if e > 0 {
            *self.0.entry(v).or_insert(0) += e;
        }
    }

    pub fn exponent(&self, v: VariableId) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VariableId, u32)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }

    pub fn vars(&self) -> impl Iterator<Item = VariableId> + '_ {
        self.0.keys().copied()
    }

    /// Variables with multiplicity, in variable order.
    pub fn expanded(&self) -> Vec<VariableId> {
        self.iter()
            .flat_map(|(v, e)| std::iter::repeat_n(v, e as usize))
            .collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (v, e) in other.iter() {
            m.add_exponent(v, e);
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.iter().all(|(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .iter()
                .filter_map(|(v, e)| {
                    let r = e - self.exponent(v);
                    (r > 0).then_some((v, r))
                })
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (v, e) in other.iter() {
            let cur = m.0.entry(v).or_insert(0);
            *cur = (*cur).max(e);
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.iter()
                .filter_map(|(v, e)| {
                    let g = e.min(other.exponent(v));
                    (g > 0).then_some((v, g))
                })
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.vars().all(|v| other.exponent(v) == 0)
    }

    pub fn rename(&self, mut f: impl FnMut(VariableId) -> VariableId) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(v, e)| (f(v), e)))
    }

    /// Graded order with smaller variable ids more significant; used to orient
    /// binomials when no monomial order is in play.
    pub fn default_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut a = self.iter();
            let mut b = other.iter();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => {
                        if va != vb {
                            return vb.cmp(&va);
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                    }
                }
            }
        })
    }
}

impl FromIterator<(VariableId, u32)> for Monomial {
    fn from_iter<I: IntoIterator<Item = (VariableId, u32)>>(iter: I) -> Self {
        Monomial::from_pairs(iter)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (v, e) in self.iter() {
            map.serialize_entry(&v, &e)?;
        }
        map.end()
    }
}

/// A monic binomial `lead − trail` with `lead ≠ trail`.
///
/// The zero binomial is never materialized; constructors return `None` instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    lead: Monomial,
    trail: Monomial,
}

impl Binomial {
    pub fn new(lead: Monomial, trail: Monomial) -> Option<Self> {
        (lead != trail).then_some(Binomial { lead, trail })
    }

    /// Builds `∏ lead_vars − ∏ trail_vars` (variables listed with repetition).
    pub fn from_vars(
        lead: impl IntoIterator<Item = VariableId>,
        trail: impl IntoIterator<Item = VariableId>,
    ) -> Option<Self> {
        Binomial::new(Monomial::product(lead), Monomial::product(trail))
    }

    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn trail(&self) -> &Monomial {
        &self.trail
    }

    pub fn swapped(&self) -> Binomial {
        Binomial {
            lead: self.trail.clone(),
            trail: self.lead.clone(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.lead.degree().max(self.trail.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.lead.degree() == self.trail.degree()
    }

    pub fn vars(&self) -> impl Iterator<Item = VariableId> + '_ {
        self.lead.vars().chain(self.trail.vars())
    }

    /// Orientation with the larger side (by [`Monomial::default_cmp`]) first.
    pub fn canonical(&self) -> Binomial {
        if self.lead.default_cmp(&self.trail) == Ordering::Less {
            self.swapped()
        } else {
            self.clone()
        }
    }

    /// Same binomial up to sign.
    pub fn same_up_to_sign(&self, other: &Binomial) -> bool {
        self == other || (self.lead == other.trail && self.trail == other.lead)
    }

    /// Divides out the common monomial factor of both sides.
    pub fn primitive(&self) -> Binomial {
        let g = self.lead.gcd(&self.trail);
        Binomial {
            lead: g.quotient_of(&self.lead).expect("gcd divides"),
            trail: g.quotient_of(&self.trail).expect("gcd divides"),
        }
    }

    pub fn rename(&self, mut f: impl FnMut(VariableId) -> VariableId) -> Binomial {
        Binomial {
            lead: self.lead.rename(&mut f),
            trail: self.trail.rename(&mut f),
        }
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.trail)
    }
}

impl fmt::Debug for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Binomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("lead", &self.lead)?;
        map.serialize_entry("trail", &self.trail)?;
        map.end()
    }
}
