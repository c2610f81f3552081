//! The length bound `θ⁺`, its companion `θ̃ = [θ⁺]~`, and the `[·]⁺`, `[·]~`
//! combinators relating a bound to the supremum of its values below.
//!
//! For equipotent arguments of cardinality `κ`,
//! `θ⁺(α1, …, αn) = κ·(q(α1) ⊗ … ⊗ q(αn)) + |r(α1) + … + r(αn)|⁺`
//! where `q`, `r` are quotient and remainder by `κ`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ordinal::{CnfOrdinal, KOrdinal};

type Eval = Arc<dyn Fn(&[KOrdinal]) -> Result<KOrdinal> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Fixed(usize),
    Variadic,
}

/// A finitary operation on ordinals.
///
/// `monotone` means `≤`-increasing in every argument over all tuples;
/// `sup_below`, when present, computes `sup{f(a') : a'_i < a_i}` exactly.
#[derive(Clone)]
pub struct BoundOp {
    name: String,
    arity: Arity,
    symmetric: bool,
    monotone: bool,
    eval: Eval,
    sup_below: Option<Eval>,
}

impl fmt::Debug for BoundOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundOp")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("symmetric", &self.symmetric)
            .field("monotone", &self.monotone)
            .field("sup_below", &self.sup_below.is_some())
            .finish()
    }
}

impl BoundOp {
    pub fn new<F>(name: impl Into<String>, arity: Arity, eval: F) -> Self
    where
        F: Fn(&[KOrdinal]) -> Result<KOrdinal> + Send + Sync + 'static,
    {
        BoundOp {
            name: name.into(),
            arity,
            symmetric: false,
            monotone: false,
            eval: Arc::new(eval),
            sup_below: None,
        }
    }

    pub fn symmetric(mut self) -> Self {
        self.symmetric = true;
        self
    }

    pub fn monotone(mut self) -> Self {
        self.monotone = true;
        self
    }

    pub fn with_sup_below<F>(mut self, sup: F) -> Self
    where
        F: Fn(&[KOrdinal]) -> Result<KOrdinal> + Send + Sync + 'static,
    {
        self.sup_below = Some(Arc::new(sup));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    pub fn eval(&self, args: &[KOrdinal]) -> Result<KOrdinal> {
        match self.arity {
            Arity::Fixed(n) if n != args.len() => Err(Error::Precondition(format!(
                "{} takes {n} arguments, got {}",
                self.name,
                args.len()
            ))),
            _ if args.is_empty() => Err(Error::Precondition(format!(
                "{} needs arguments",
                self.name
            ))),
            _ => (self.eval)(args),
        }
    }
}

pub fn all_equipotent(args: &[KOrdinal]) -> bool {
    args.windows(2).all(|w| w[0].equipotent(&w[1]))
}

fn nat_product(qs: impl IntoIterator<Item = CnfOrdinal>) -> CnfOrdinal {
    qs.into_iter()
        .fold(CnfOrdinal::one(), |acc, q| acc.nat_mul(&q))
}

/// `θ⁺`: the least strict upper bound of lengths of intersections of well
/// orders of the given types.
pub fn theta_plus(args: &[KOrdinal]) -> Result<KOrdinal> {
    match args {
        [] => Err(Error::Precondition(
            "theta_plus needs at least one argument".into(),
        )),
        [a] => Ok(a.succ()),
        _ if !all_equipotent(args) => Ok(KOrdinal::zero()),
        _ if args[0].is_finite() => Ok(args[0].succ()),
        _ => {
            let level = args[0].level();
            let mut qs = Vec::with_capacity(args.len());
            let mut rsum = KOrdinal::zero();
            for a in args {
                let (q, r) = a.div_cardinal(level)?;
                qs.push(q);
                rsum = rsum.add(&r);
            }
            Ok(KOrdinal::cardinal_times(level, &nat_product(qs)).add(&rsum.hartog()?))
        }
    }
}

/// `θ`, the supremum of the lengths themselves: `θ⁺ - 1` when `θ⁺` is a
/// successor, `θ⁺` otherwise.
pub fn theta(args: &[KOrdinal]) -> Result<KOrdinal> {
    let p = theta_plus(args)?;
    Ok(p.pred().unwrap_or(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    /// remainder a successor
    A,
    /// remainder a nonzero limit
    B,
    /// zero remainder, successor quotient
    C,
    /// zero remainder, limit quotient
    D,
}

/// `θ̃(a) = sup{θ⁺(a') : a'_i < a_i}`, in closed form.
pub fn theta_tilde(args: &[KOrdinal]) -> Result<KOrdinal> {
    if args.is_empty() {
        return Err(Error::Precondition(
            "theta_tilde needs at least one argument".into(),
        ));
    }
    if args.len() == 1 {
        return Ok(args[0].clone());
    }
    if args.iter().any(KOrdinal::is_zero) {
        return Ok(KOrdinal::zero());
    }
    let m = args.iter().min().unwrap();
    let omega = KOrdinal::omega_k(0);
    if m.is_finite() || *m == omega {
        return Ok(m.clone());
    }
    // the largest infinite cardinal below m; only tuples of that cardinality matter
    let lam_level = if m.is_initial() {
        m.level() - 1
    } else {
        m.level()
    };
    let lambda = KOrdinal::omega_k(lam_level);
    if args.iter().any(|a| a.cardinality() > lambda) {
        return lambda.hartog();
    }

    let mut parts = Vec::with_capacity(args.len());
    for a in args {
        let (q, r) = a.div_cardinal(lam_level)?;
        let shape = if r.is_successor() {
            Shape::A
        } else if !r.is_zero() {
            Shape::B
        } else if q.is_successor() {
            Shape::C
        } else {
            Shape::D
        };
        parts.push((q, r, shape));
    }

    if parts.iter().all(|p| p.2 == Shape::A) {
        let preds: Vec<_> = args.iter().map(|a| a.pred().unwrap()).collect();
        return theta_plus(&preds);
    }

    // best quotient each non-D coordinate can reach
    let fixed = nat_product(parts.iter().filter_map(|(q, _, s)| match s {
        Shape::A | Shape::B => Some(q.clone()),
        Shape::C => q.pred(),
        Shape::D => None,
    }));

    let limits: Vec<&CnfOrdinal> = parts
        .iter()
        .filter(|p| p.2 == Shape::D)
        .map(|p| &p.0)
        .collect();
    if !limits.is_empty() {
        return Ok(KOrdinal::cardinal_times(
            lam_level,
            &sup_product_below(&limits, &fixed),
        ));
    }

    if parts.iter().any(|p| p.2 == Shape::C) {
        return Ok(KOrdinal::cardinal_times(lam_level, &fixed.succ()));
    }

    // only A and B coordinates; the quotient product is attained
    let mut attained: Option<KOrdinal> = None;
    let mut approached: Option<KOrdinal> = None;
    for (_, r, s) in &parts {
        let slot = if *s == Shape::B && r.is_initial() {
            (&mut approached, r.clone())
        } else {
            (&mut attained, r.cardinality())
        };
        if slot.0.as_ref().is_none_or(|x| *x < slot.1) {
            *slot.0 = Some(slot.1);
        }
    }
    let tail = match (attained, approached) {
        (Some(a), Some(s)) if s <= a => a.hartog()?,
        (_, Some(s)) => s,
        (Some(a), None) => a.hartog()?,
        (None, None) => unreachable!("a B coordinate is present"),
    };
    Ok(KOrdinal::cardinal_times(lam_level, &fixed).add(&tail))
}

/// `sup{fixed ⊗ x_1 ⊗ … ⊗ x_k : x_j < q_j}` for limits `q_j`.
///
/// Writing `q_j = b_j + ω^e_j`, cofinal choices are `x_j = b_j ⊕ z_j` with
/// `z_j < ω^e_j`; expanding the product, the part that varies has exponents
/// cofinal below `E = max_T sup⁺{⊕_(j∈T) e'_j ⊕ lead(K_T) : e'_j < e_j}`,
/// `K_T` the product of the remaining factors.
fn sup_product_below(limits: &[&CnfOrdinal], fixed: &CnfOrdinal) -> CnfOrdinal {
    let bases: Vec<CnfOrdinal> = limits.iter().map(|q| q.drop_last_unit()).collect();
    let exps: Vec<&CnfOrdinal> = limits.iter().map(|q| q.last_exponent().unwrap()).collect();
    let constant = nat_product(bases.iter().cloned()).nat_mul(fixed);
    let k = limits.len();
    let mut top: Option<CnfOrdinal> = None;
    for mask in 1u32..(1 << k) {
        let rest = nat_product(
            (0..k)
                .filter(|j| mask & (1 << j) == 0)
                .map(|j| bases[j].clone()),
        )
        .nat_mul(fixed);
        let Some(lead) = rest.leading_exponent() else {
            continue;
        };
        let chosen: Vec<&CnfOrdinal> = (0..k)
            .filter(|j| mask & (1 << j) != 0)
            .map(|j| exps[j])
            .collect();
        let e = CnfOrdinal::nat_sup_plus(&chosen, lead);
        if top.as_ref().is_none_or(|t| e > *t) {
            top = Some(e);
        }
    }
    let e = top.expect("the full mask has a nonzero cofactor");
    constant.high_part(&e).nat_add(&CnfOrdinal::omega_pow(e))
}

/// `θ_#` on countable arguments: `sup⁺{θ(a')}` over the box where a plain
/// argument ranges over `a' ≤ a` and an underlined one over `a' < a`.
pub fn theta_sharp(args: &[(KOrdinal, bool)]) -> Result<KOrdinal> {
    if args.is_empty() {
        return Err(Error::Precondition(
            "theta_sharp needs at least one argument".into(),
        ));
    }
    if let Some((a, _)) = args.iter().find(|(a, _)| !a.is_countable()) {
        return Err(Error::BadOrdinal {
            expected: "a countable ordinal",
            got: a.to_string(),
        });
    }
    if args.iter().any(|(a, u)| *u && a.is_zero()) {
        return Ok(KOrdinal::zero());
    }
    let shifted: Vec<KOrdinal> = args
        .iter()
        .map(|(a, u)| if *u { a.clone() } else { a.succ() })
        .collect();
    // on countable arguments θ(a') + 1 = max(θ⁺(a'), 1)
    let t = theta_tilde(&shifted)?;
    Ok(t.max(KOrdinal::from(1)))
}

pub fn theta_plus_op() -> BoundOp {
    BoundOp::new("theta_plus", Arity::Variadic, theta_plus)
        .symmetric()
        .with_sup_below(theta_tilde)
}

pub fn theta_tilde_op() -> BoundOp {
    BoundOp::new("theta_tilde", Arity::Variadic, theta_tilde)
        .symmetric()
        .monotone()
}

/// `[f]⁺(a) = f(a_1 + 1, …, a_n + 1)` for equipotent arguments, `0` otherwise.
pub fn bracket_plus(f: &BoundOp) -> BoundOp {
    let inner = f.clone();
    let mut g = BoundOp::new(format!("[{}]+", f.name), f.arity, move |args| {
        if !all_equipotent(args) {
            return Ok(KOrdinal::zero());
        }
        let shifted: Vec<_> = args.iter().map(KOrdinal::succ).collect();
        inner.eval(&shifted)
    });
    g.symmetric = f.symmetric;
    g
}

/// `[f]~(a) = sup{f(a') : a'_i < a_i}`.
///
/// Uses the exact rule declared by `f`, or the maximum at the predecessors
/// when `f` is monotone and every argument is a successor.
pub fn bracket_tilde(f: &BoundOp) -> BoundOp {
    let inner = f.clone();
    let mut g = BoundOp::new(format!("[{}]~", f.name), f.arity, move |args| {
        if args.iter().any(KOrdinal::is_zero) {
            return Ok(KOrdinal::zero());
        }
        if let Some(sup) = &inner.sup_below {
            return sup(args);
        }
        if inner.monotone && args.iter().all(KOrdinal::is_successor) {
            let preds: Vec<_> = args.iter().map(|a| a.pred().unwrap()).collect();
            return inner.eval(&preds);
        }
        Err(Error::SupremumUnavailable(format!(
            "{} has no exact rule at {args:?}",
            inner.name
        )))
    });
    g.symmetric = f.symmetric;
    g
}

/// Checks `[θ̃_2(θ̃_n, id)]⁺(a_1, …, a_n, b) = θ⁺_(n+1)(a_1, …, a_n, b)`,
/// evaluating both sides independently.
pub fn reduction_identity_check(n: usize, args: &[KOrdinal]) -> Result<bool> {
    if !(2..=4).contains(&n) || args.len() != n + 1 {
        return Err(Error::Precondition(format!(
            "reduction check needs 2 <= n <= 4 and n + 1 arguments, got n = {n} with {}",
            args.len()
        )));
    }
    let lhs = if all_equipotent(args) {
        let head: Vec<_> = args[..n].iter().map(KOrdinal::succ).collect();
        theta_tilde(&[theta_tilde(&head)?, args[n].succ()])?
    } else {
        KOrdinal::zero()
    };
    Ok(lhs == theta_plus(args)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> KOrdinal {
        s.parse().unwrap()
    }

    fn ks(v: &[&str]) -> Vec<KOrdinal> {
        v.iter().map(|s| k(s)).collect()
    }

    #[test]
    fn theta_plus_values() {
        for i in 0..=KOrdinal::MAX_LEVEL {
            let kappa = KOrdinal::omega_k(i);
            assert_eq!(
                theta_plus(&[kappa.clone(), kappa.clone()]).unwrap(),
                kappa.succ()
            );
        }
        assert_eq!(theta_plus(&ks(&["w", "w^2+w"])).unwrap(), k("w^2+w+1"));
        assert_eq!(theta_plus(&ks(&["w*2+3", "w*2+4"])).unwrap(), k("w*4+8"));
        assert_eq!(theta_plus(&ks(&["w", "W1"])).unwrap(), k("0"));
        assert_eq!(theta_plus(&ks(&["3", "3"])).unwrap(), k("4"));
        assert_eq!(theta_plus(&ks(&["3", "4"])).unwrap(), k("0"));
        assert_eq!(theta_plus(&ks(&["w^2"])).unwrap(), k("w^2+1"));
        assert_eq!(
            theta_plus(&ks(&["W1*(1)+(w)", "W1"])).unwrap(),
            k("W1*(2)+(0)")
        );
    }

    #[test]
    fn theta_tilde_values() {
        let cases: [(&[&str], &str); 16] = [
            (&["w", "w"], "w"),
            (&["w+1", "w+1"], "w+1"),
            (&["4", "4"], "4"),
            (&["3", "w"], "3"),
            (&["w*2", "w*2"], "w*2"),
            (&["w^2", "w^2"], "w^2"),
            (&["w^2", "w+1"], "w^2"),
            (&["w^2+w", "w^2+w"], "w^3+w"),
            (&["W1", "W1"], "W1"),
            (&["w+1", "W1"], "W1"),
            (&["W1*(2)+(0)", "W1*(1)+(1)"], "W1*(2)+(0)"),
            (&["W1*(1)+(w)", "W1*(1)+(1)"], "W1*(1)+(w)"),
            (&["W1*(1)+(w+1)", "W1*(1)+(w)"], "W1*(2)+(0)"),
            (&["W1*(w)+(0)", "W1*(w)+(0)"], "W1*(w)+(0)"),
            (&["w", "0"], "0"),
            (&["w^2+w*3+5"], "w^2+w*3+5"),
        ];
        for (args, want) in cases {
            assert_eq!(theta_tilde(&ks(args)).unwrap(), k(want), "{args:?}");
        }
    }

    #[test]
    fn combinators() {
        let plus = theta_plus_op();
        let tilde = theta_tilde_op();
        let via_tilde = bracket_plus(&tilde);
        assert_eq!(
            via_tilde.eval(&ks(&["w*2+3", "w*2+4"])).unwrap(),
            k("w*4+8")
        );
        assert_eq!(via_tilde.eval(&ks(&["3", "3"])).unwrap(), k("4"));
        assert_eq!(via_tilde.eval(&ks(&["w", "W1"])).unwrap(), k("0"));
        let back = bracket_tilde(&plus);
        assert_eq!(back.eval(&ks(&["w+1", "w+1"])).unwrap(), k("w+1"));
        assert_eq!(back.eval(&ks(&["w", "0"])).unwrap(), k("0"));
        let opaque = BoundOp::new("opaque", Arity::Fixed(2), |a| Ok(a[0].clone()));
        assert!(matches!(
            bracket_tilde(&opaque).eval(&ks(&["w", "w"])),
            Err(Error::SupremumUnavailable(_))
        ));
        assert!(opaque.eval(&ks(&["w"])).is_err());
        assert_eq!(
            bracket_tilde(&tilde).eval(&ks(&["w+2", "w+2"])).unwrap(),
            k("w+1")
        );
    }

    #[test]
    fn reduction_examples() {
        assert!(reduction_identity_check(2, &ks(&["w", "w", "w"])).unwrap());
        assert!(reduction_identity_check(2, &ks(&["w*2+3", "w*2+4", "w+1"])).unwrap());
        assert!(reduction_identity_check(2, &ks(&["w", "W1", "w"])).unwrap());
        assert!(
            reduction_identity_check(3, &ks(&["W1*(1)+(w)", "W1", "W1", "W1*(2)+(0)"])).unwrap()
        );
        assert!(reduction_identity_check(1, &ks(&["w", "w"])).is_err());
    }

    #[test]
    fn sharp_values() {
        let s =
            |a: &str, ua: bool, b: &str, ub: bool| theta_sharp(&[(k(a), ua), (k(b), ub)]).unwrap();
        assert_eq!(s("w*2", false, "w", false), k("w*2+1"));
        assert_eq!(s("3", false, "w", false), k("4"));
        assert_eq!(s("w", true, "w", false), k("w"));
        assert_eq!(s("0", true, "w", false), k("0"));
        assert_eq!(s("0", false, "0", false), k("1"));
        assert!(theta_sharp(&[(k("W1"), false)]).is_err());
    }
}
