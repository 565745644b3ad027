use std::fmt;

use serde::{Serialize, Serializer};

use super::cardinal::Cardinal;
use super::descriptor::{Atom, GroupDescriptor, PrimeSpec};
use super::invariants::{derive_invariants, DerivedInvariants};
use super::rules::rule;
use crate::value::{StringValue, Verdict};
use crate::witness::carriers::primes;

/// The six string numbers the classifier decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    S,
    Ns,
    S0,
    STilde,
    NsTilde,
    S0Tilde,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::S,
        Measure::Ns,
        Measure::S0,
        Measure::STilde,
        Measure::NsTilde,
        Measure::S0Tilde,
    ];
    pub const PLAIN: [Measure; 3] = [Measure::S, Measure::Ns, Measure::S0];
    pub const TILDE: [Measure; 3] = [Measure::STilde, Measure::NsTilde, Measure::S0Tilde];

    fn index(self) -> usize {
        self as usize
    }

    pub fn key(self) -> &'static str {
        match self {
            Measure::S => "s",
            Measure::Ns => "ns",
            Measure::S0 => "s0",
            Measure::STilde => "s_t",
            Measure::NsTilde => "ns_t",
            Measure::S0Tilde => "s0_t",
        }
    }

    /// The hereditary counterpart of a plain measure and vice versa.
    pub fn partner(self) -> Measure {
        Measure::ALL[(self.index() + 3) % 6]
    }
}

/// The six verdicts in a fixed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub s: Verdict,
    pub ns: Verdict,
    pub s0: Verdict,
    pub s_t: Verdict,
    pub ns_t: Verdict,
    pub s0_t: Verdict,
}

impl Verdicts {
    pub fn unknown() -> Self {
        Verdicts::from_array([Verdict::Unknown; 6])
    }

    pub fn from_array(v: [Verdict; 6]) -> Self {
        Verdicts {
            s: v[0],
            ns: v[1],
            s0: v[2],
            s_t: v[3],
            ns_t: v[4],
            s0_t: v[5],
        }
    }

    pub fn to_array(self) -> [Verdict; 6] {
        [self.s, self.ns, self.s0, self.s_t, self.ns_t, self.s0_t]
    }

    pub fn get(&self, m: Measure) -> Verdict {
        self.to_array()[m.index()]
    }

    pub fn set(&mut self, m: Measure, v: Verdict) {
        let mut a = self.to_array();
        a[m.index()] = v;
        *self = Verdicts::from_array(a);
    }

    pub fn plain(&self) -> [Verdict; 3] {
        [self.s, self.ns, self.s0]
    }

    pub fn tilde(&self) -> [Verdict; 3] {
        [self.s_t, self.ns_t, self.s0_t]
    }
}

impl fmt::Display for Verdicts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{} | {},{},{})",
            self.s, self.ns, self.s0, self.s_t, self.ns_t, self.s0_t
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Hopf {
    Unknown,
    NotHopfian,
    Hopfian,
    HereditarilyHopfian,
}

impl Hopf {
    pub fn name(self) -> &'static str {
        match self {
            Hopf::Unknown => "Unknown",
            Hopf::NotHopfian => "NotHopfian",
            Hopf::Hopfian => "Hopfian",
            Hopf::HereditarilyHopfian => "HereditarilyHopfian",
        }
    }
}

/// One rule application.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: String,
    pub anchor: String,
    pub note: String,
    pub conclusion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} ⇒ {}",
            self.rule, self.anchor, self.note, self.conclusion
        )?;
        if let Some(w) = &self.witness {
            write!(f, " (witness {})", w)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub normalized: GroupDescriptor,
    pub invariants: DerivedInvariants,
    pub verdicts: Verdicts,
    #[serde(serialize_with = "serialize_hopf")]
    pub hopf: Hopf,
    pub trace: Vec<TraceStep>,
    /// Structure taken on trust from flag atoms.
    pub assumptions: Vec<String>,
    /// Rule conclusions that disagreed with an earlier one; empty when sound.
    pub conflicts: Vec<String>,
}

fn serialize_hopf<S: Serializer>(h: &Hopf, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(h.name())
}

impl Classification {
    /// Steps whose conclusion sets measure `m`.
    pub fn steps_for(&self, m: Measure) -> impl Iterator<Item = &TraceStep> {
        let prefix = format!("{} = ", m.key());
        self.trace
            .iter()
            .filter(move |t| t.conclusion.starts_with(&prefix))
    }
}

/// How a piece sits inside the group being classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Summand,
    /// `t_p(G)`; `Every` is a representative of all unlisted primes.
    Primary(PrimeSpec),
    /// `t(G)`: fully invariant, a summand unless noted.
    TorsionPart,
    /// `G/t(G)`; a summand complement when `t(G)` is a summand.
    Quotient {
        summand: bool,
    },
    Divisible,
    Reduced,
}

struct Piece {
    role: Role,
    c: Classification,
}

impl Piece {
    /// Infinite plain values transfer to `G`.
    fn lifts_plain(&self) -> bool {
        !matches!(self.role, Role::Quotient { summand: false })
    }

    /// Infinite hereditary values transfer to `G`.
    fn lifts_tilde(&self) -> bool {
        self.lifts_plain()
    }

    fn describe(&self) -> String {
        let d = &self.c.normalized;
        match self.role {
            Role::Summand => format!("summand {}", d),
            Role::Primary(PrimeSpec::Specific(p)) => format!("t_{}(G) = {}", p, d),
            Role::Primary(PrimeSpec::Every) => {
                format!("t_q(G) for each unnamed prime q, e.g. {}", d)
            }
            Role::TorsionPart => format!("t(G) = {}", d),
            Role::Quotient { .. } => format!("G/t(G) = {}", d),
            Role::Divisible => format!("d(G) = {}", d),
            Role::Reduced => format!("reduced part {}", d),
        }
    }
}

enum Target {
    Value(Measure, StringValue),
    Hopf(Hopf),
}

struct Conclusion {
    target: Target,
    note: String,
    witness: Option<String>,
}

fn value(m: Measure, zero: bool, note: impl Into<String>) -> Conclusion {
    Conclusion {
        target: Target::Value(m, StringValue::from_zero(zero)),
        note: note.into(),
        witness: None,
    }
}

fn infinite(ms: &[Measure], note: &str, witness: Option<String>) -> Vec<Conclusion> {
    ms.iter()
        .map(|&m| Conclusion {
            witness: witness.clone(),
            ..value(m, false, note)
        })
        .collect()
}

fn hopf(h: Hopf, note: impl Into<String>) -> Conclusion {
    Conclusion {
        target: Target::Hopf(h),
        note: note.into(),
        witness: None,
    }
}

fn with_witness(mut c: Conclusion, w: Option<String>) -> Conclusion {
    c.witness = w;
    c
}

struct State {
    verdicts: Verdicts,
    hopf: Hopf,
    trace: Vec<TraceStep>,
    conflicts: Vec<String>,
}

impl State {
    fn get(&self, m: Measure) -> Verdict {
        self.verdicts.get(m)
    }

    fn witness_for(&self, m: Measure) -> Option<String> {
        let prefix = format!("{} = ", m.key());
        self.trace
            .iter()
            .filter(|t| t.conclusion.starts_with(&prefix))
            .find_map(|t| t.witness.clone())
    }

    fn step(&mut self, id: &str, c: &Conclusion, conclusion: String) {
        let r = rule(id);
        self.trace.push(TraceStep {
            rule: r.id.into(),
            anchor: r.anchor.into(),
            note: c.note.clone(),
            conclusion,
            witness: c.witness.clone(),
        });
    }

    fn conflict(&mut self, text: String) {
        if !self.conflicts.contains(&text) {
            self.conflicts.push(text);
        }
    }

    /// Records a conclusion; returns whether the state changed.
    fn apply(&mut self, id: &str, c: Conclusion) -> bool {
        match c.target {
            Target::Value(m, v) => {
                let text = format!("{} = {}", m.key(), v);
                match self.get(m).known() {
                    None => {
                        self.verdicts.set(m, v.into());
                        self.step(id, &c, text);
                        true
                    }
                    Some(old) if old != v => {
                        self.conflict(format!(
                            "[{}] concludes {} but {} = {}",
                            id,
                            text,
                            m.key(),
                            old
                        ));
                        false
                    }
                    Some(_) => {
                        if c.witness.is_some() && self.witness_for(m).is_none() {
                            self.step(id, &c, text);
                            true
                        } else {
                            false
                        }
                    }
                }
            }
            Target::Hopf(h) => {
                let text = format!("hopf = {}", h.name());
                let next = match (self.hopf, h) {
                    (old, new) if old == new => return false,
                    (Hopf::Unknown, new) => new,
                    (Hopf::Hopfian, Hopf::HereditarilyHopfian) => h,
                    (Hopf::HereditarilyHopfian, Hopf::Hopfian) => return false,
                    (old, _) => {
                        self.conflict(format!(
                            "[{}] concludes {} but hopf = {}",
                            id,
                            text,
                            old.name()
                        ));
                        return false;
                    }
                };
                self.hopf = next;
                self.step(id, &c, text);
                true
            }
        }
    }
}

struct Ctx<'a> {
    d: &'a GroupDescriptor,
    inv: &'a DerivedInvariants,
    pieces: &'a [Piece],
}

impl Ctx<'_> {
    fn sole(&self) -> Option<&Atom> {
        self.d.sole_atom()
    }

    fn piece(&self, role: fn(&Role) -> bool) -> Option<&Piece> {
        self.pieces.iter().find(|p| role(&p.role))
    }
}

type RuleFn = fn(&Ctx, &State) -> Vec<Conclusion>;

fn spec_prime(p: PrimeSpec) -> u64 {
    match p {
        PrimeSpec::Specific(p) => p,
        PrimeSpec::Every => 2,
    }
}

fn prime_name(p: PrimeSpec) -> String {
    match p {
        PrimeSpec::Specific(p) => p.to_string(),
        PrimeSpec::Every => "every prime".into(),
    }
}

fn bernoulli_modulus(atom: &Atom) -> Option<u64> {
    match atom {
        Atom::Cyclic { p, k } => spec_prime(*p).checked_pow(*k),
        _ => None,
    }
}

fn r_fin(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    if !ctx.inv.is_finite {
        return vec![];
    }
    let mut out: Vec<Conclusion> = Measure::ALL
        .iter()
        .map(|&m| value(m, true, "G is finite"))
        .collect();
    out.push(hopf(Hopf::HereditarilyHopfian, "G is finite"));
    out
}

fn r_fg_s(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    if !ctx.inv.is_finitely_generated {
        return vec![];
    }
    let small = ctx.inv.r0 <= Cardinal::one();
    let note = format!("finitely generated with r0 = {}", ctx.inv.r0);
    let w = (!small).then(|| "z2-unipotent".to_string());
    vec![
        with_witness(value(Measure::S, small, &note), w.clone()),
        with_witness(value(Measure::Ns, small, &note), w),
        value(Measure::S0, true, &note),
    ]
}

fn r_free(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    if !ctx.inv.is_free || ctx.inv.is_trivial {
        return vec![];
    }
    let small = ctx.inv.r0 <= Cardinal::one();
    let note = format!("free of rank {}", ctx.inv.r0);
    let w = (!small).then(|| "z2-unipotent".to_string());
    vec![
        with_witness(value(Measure::S, small, &note), w.clone()),
        with_witness(value(Measure::Ns, small, &note), w),
        value(Measure::S0, ctx.inv.r0.is_finite(), &note),
    ]
}

fn r_sum_n(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    let Some((atom, mult)) = ctx.d.summands().iter().find(|(_, m)| !m.is_finite()) else {
        return vec![];
    };
    let note = format!("{} occurs with multiplicity {}", atom, mult);
    let (ns_w, s0_w) = match (atom, bernoulli_modulus(atom)) {
        (_, Some(m)) => (
            Some(format!("bernoulli-two-sided-{}", m)),
            Some(format!("bernoulli-left-{}", m)),
        ),
        (Atom::FreeZ, _) => (Some("z2-unipotent".to_string()), None),
        _ => (None, None),
    };
    vec![
        with_witness(
            value(Measure::S, false, &note),
            s0_w.clone().or(ns_w.clone()),
        ),
        with_witness(value(Measure::Ns, false, &note), ns_w),
        with_witness(value(Measure::S0, false, &note), s0_w),
    ]
}

fn r_bounded(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.inv.bounded_infinite_p_parts.first() {
        Some(&p) => infinite(
            &Measure::PLAIN,
            &format!(
                "the {}-primary summand is infinite and bounded",
                prime_name(p)
            ),
            None,
        ),
        None => vec![],
    }
}

/// A witness for `s₀ = ∞` on the `p`-component, when the construction covers it.
fn null_witness(d: &GroupDescriptor, p: PrimeSpec) -> Option<String> {
    let q = spec_prime(p);
    let comp = d.p_component(q);
    if comp.atoms().any(|a| matches!(a, Atom::Prufer(_))) {
        Some(format!("prufer-null-{}", q))
    } else if comp.atoms().any(|a| matches!(a, Atom::StandardBasic(_))) {
        Some(format!("basic-small-endo-{}", q))
    } else {
        None
    }
}

fn r_thb(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    if !ctx.inv.is_torsion || ctx.inv.is_trivial {
        return vec![];
    }
    match ctx.inv.t_p_size.first_infinite() {
        None => vec![
            value(Measure::S, true, "torsion with every p-component finite"),
            value(Measure::S0, true, "torsion with every p-component finite"),
        ],
        Some(p) => {
            let note = format!("torsion with t_{}(G) infinite", prime_name(p));
            let w = null_witness(ctx.d, p);
            vec![
                with_witness(value(Measure::S, false, &note), w.clone()),
                with_witness(value(Measure::S0, false, &note), w),
            ]
        }
    }
}

fn r_b2(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    if ctx.inv.is_torsion && ctx.inv.r_p.all_finite() {
        vec![value(Measure::Ns, true, "torsion with every p-rank finite")]
    } else {
        vec![]
    }
}

fn r_uk(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.inv.infinite_uk_invariant.first() {
        Some(&p) if ctx.inv.is_torsion => vec![value(
            Measure::Ns,
            false,
            format!(
                "the reduced {}-component has an infinite finite-index Ulm-Kaplansky invariant",
                prime_name(p)
            ),
        )],
        _ => vec![],
    }
}

fn r_card(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    if ctx.inv.is_torsion && ctx.inv.cardinality > Cardinal::Continuum {
        vec![value(
            Measure::Ns,
            false,
            format!("torsion of size {}", ctx.inv.cardinality),
        )]
    } else {
        vec![]
    }
}

fn r_basic(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.inv.unbounded_basic_p_parts.first() {
        Some(&p) => vec![with_witness(
            value(
                Measure::Ns,
                false,
                format!(
                    "t_{}(G) is an unbounded direct sum of cyclic groups and a summand",
                    p
                ),
            ),
            Some(format!("p-basic-nonsingular-{}", p)),
        )],
        None => vec![],
    }
}

fn r_tcomp(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.sole() {
        Some(Atom::TorsionComplete { p, bounded: false }) => infinite(
            &Measure::PLAIN,
            &format!("unbounded torsion-complete {}-group", p),
            None,
        ),
        _ => vec![],
    }
}

fn r_th2(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.sole() {
        Some(a @ (Atom::TotallyProjective(_) | Atom::POmegaPlus1Projective(_))) => infinite(
            &Measure::PLAIN,
            &format!("{} is an infinite reduced p-group of that class", a),
            None,
        ),
        _ => vec![],
    }
}

fn r_divtor(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.d.atoms().find_map(|a| match a {
        Atom::Prufer(p) => Some(*p),
        _ => None,
    }) {
        Some(p) => vec![with_witness(
            value(
                Measure::S0,
                false,
                format!("Prufer({}) is a divisible torsion summand", p),
            ),
            Some(format!("prufer-null-{}", spec_prime(p))),
        )],
        None => vec![],
    }
}

fn r_divtd(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    let inv = ctx.inv;
    if !inv.is_divisible || inv.is_trivial {
        return vec![];
    }
    let note = "G is divisible and nonzero";
    vec![
        value(Measure::S, false, note),
        value(Measure::Ns, inv.is_torsion && inv.r_p.all_finite(), note),
        value(Measure::S0, inv.is_torsion_free && inv.r0.is_finite(), note),
    ]
}

fn r_tf_rank(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    if ctx.inv.is_torsion_free && !ctx.inv.is_trivial && ctx.inv.r0.is_finite() {
        vec![value(
            Measure::S0,
            true,
            format!("torsion-free of rank {}", ctx.inv.r0),
        )]
    } else {
        vec![]
    }
}

fn rank_one_witness(atom: &Atom) -> Option<String> {
    match atom {
        Atom::RankOne(t) => t
            .infinite_primes()
            .first()
            .map(|p| format!("localization-rank1-{}", p)),
        Atom::Rationals => Some("localization-rank1-2".into()),
        _ => None,
    }
}

fn r_pomega(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    let inv = ctx.inv;
    if !inv.is_torsion_free || !inv.torsion_free_pomega_nonzero {
        return vec![];
    }
    let note = match inv.pomega_prime {
        Some(p) => format!("torsion-free with {}^ω G ≠ 0", p),
        None => "torsion-free with p^ω G ≠ 0 for some p".into(),
    };
    let w = match (ctx.sole(), inv.pomega_prime) {
        (Some(Atom::PAdic(p)), Some(q)) => Some(format!("localization-jp-{}-q{}", p, q)),
        (Some(a), _) => rank_one_witness(a),
        _ => None,
    };
    vec![with_witness(value(Measure::Ns, false, note), w)]
}

fn r_endorigid(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.sole() {
        Some(Atom::EndorigidTF {
            rank,
            pomega_all_zero,
        }) => {
            let note = format!(
                "endorigid of rank {} with p^ω G {} for all p",
                rank,
                if *pomega_all_zero {
                    "= 0"
                } else {
                    "≠ 0 for some p, not"
                }
            );
            vec![
                value(Measure::S0, true, &note),
                value(Measure::S, *pomega_all_zero, &note),
                value(Measure::Ns, *pomega_all_zero, &note),
            ]
        }
        _ => vec![],
    }
}

fn r_rk1(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    let inv = ctx.inv;
    if !inv.is_torsion_free || inv.r0 != Cardinal::one() {
        return vec![];
    }
    let Some(inf) = inv.quotient_type_has_infinity else {
        return vec![];
    };
    let note = if inf {
        "rank one with ∞ in the type"
    } else {
        "rank one with no ∞ in the type"
    };
    let w = if inf {
        ctx.sole().and_then(rank_one_witness)
    } else {
        None
    };
    vec![
        with_witness(value(Measure::S, !inf, note), w.clone()),
        with_witness(value(Measure::Ns, !inf, note), w),
        value(Measure::S0, true, note),
    ]
}

fn r_tilde_tor(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    let inv = ctx.inv;
    if !inv.is_torsion {
        return vec![];
    }
    let finite = inv.t_p_size.all_finite();
    let tp = if finite {
        "every p-component finite"
    } else {
        "some p-component infinite"
    };
    let rp = if inv.r_p.all_finite() {
        "every p-rank finite"
    } else {
        "some p-rank infinite"
    };
    vec![
        value(Measure::STilde, finite, format!("torsion with {}", tp)),
        value(Measure::S0Tilde, finite, format!("torsion with {}", tp)),
        value(
            Measure::NsTilde,
            inv.r_p.all_finite(),
            format!("torsion with {}", rp),
        ),
    ]
}

fn r_tilde_main(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    let inv = ctx.inv;
    let tp = inv.t_p_size.all_finite();
    let rp = inv.r_p.all_finite();
    let mut out = vec![value(
        Measure::S0Tilde,
        tp && inv.r0.is_finite(),
        format!(
            "p-components {}, r0 = {}",
            if tp { "all finite" } else { "not all finite" },
            inv.r0
        ),
    )];
    let quotient = if inv.r0.is_zero() {
        Some((
            true,
            "G/t(G) = 0, read as meeting the rank condition".to_string(),
        ))
    } else if inv.r0 == Cardinal::one() {
        inv.quotient_type_has_infinity.map(|inf| {
            (
                !inf,
                format!(
                    "G/t(G) of rank one {} ∞ in its type",
                    if inf { "with" } else { "without" }
                ),
            )
        })
    } else {
        Some((false, format!("G/t(G) of rank {}", inv.r0)))
    };
    if let Some((ok, text)) = quotient {
        out.push(value(
            Measure::NsTilde,
            rp && ok,
            format!(
                "p-ranks {}; {}",
                if rp { "all finite" } else { "not all finite" },
                text
            ),
        ));
    }
    out
}

fn r_tilde_split(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    let (Some(t), Some(q)) = (
        ctx.piece(|r| *r == Role::TorsionPart),
        ctx.piece(|r| matches!(r, Role::Quotient { .. })),
    ) else {
        return vec![];
    };
    Measure::TILDE
        .iter()
        .filter_map(|&m| {
            let (a, b) = (t.c.verdicts.get(m), q.c.verdicts.get(m));
            a.plus(b).known().map(|v| {
                value(
                    m,
                    v.is_zero(),
                    format!(
                        "{} on {} and {} on {}",
                        a, t.c.normalized, b, q.c.normalized
                    ),
                )
            })
        })
        .collect()
}

fn r_prop(_: &Ctx, st: &State) -> Vec<Conclusion> {
    let mut out = Vec::new();
    for m in Measure::PLAIN {
        let t = m.partner();
        if st.get(t) == Verdict::Zero {
            out.push(value(m, true, format!("{} = 0", t.key())));
        }
        if st.get(m) == Verdict::Infinite {
            out.push(with_witness(
                value(t, false, format!("{} = ∞", m.key())),
                st.witness_for(m),
            ));
        }
    }
    out
}

fn r_wadt(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    let (Some(t), Some(q)) = (
        ctx.piece(|r| *r == Role::TorsionPart),
        ctx.piece(|r| matches!(r, Role::Quotient { .. })),
    ) else {
        return vec![];
    };
    if t.c.verdicts.s0 == Verdict::Zero && q.c.verdicts.s0 == Verdict::Zero {
        vec![value(
            Measure::S0,
            true,
            format!(
                "H = t(G) = {} and G/H = {} both have s0 = 0",
                t.c.normalized, q.c.normalized
            ),
        )]
    } else {
        vec![]
    }
}

fn r_fi_sum(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    if !ctx.inv.is_torsion {
        return vec![];
    }
    let comps: Vec<&Piece> = ctx
        .pieces
        .iter()
        .filter(|p| matches!(p.role, Role::Primary(_)))
        .collect();
    if comps.len() < 2 {
        return vec![];
    }
    Measure::PLAIN
        .iter()
        .filter(|&&m| comps.iter().all(|p| p.c.verdicts.get(m) == Verdict::Zero))
        .map(|&m| {
            value(
                m,
                true,
                format!(
                    "{} = 0 on every p-component: {}",
                    m.key(),
                    comps
                        .iter()
                        .map(|p| p.describe())
                        .collect::<Vec<_>>()
                        .join("; ")
                ),
            )
        })
        .collect()
}

fn r_ridotti(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    let (Some(d), Some(r)) = (
        ctx.piece(|r| *r == Role::Divisible),
        ctx.piece(|r| *r == Role::Reduced),
    ) else {
        return vec![];
    };
    Measure::PLAIN
        .iter()
        .filter_map(|&m| {
            let (a, b) = (d.c.verdicts.get(m), r.c.verdicts.get(m));
            a.plus(b).known().map(|v| {
                value(
                    m,
                    v.is_zero(),
                    format!(
                        "{} on {} and {} on {}",
                        a, d.c.normalized, b, r.c.normalized
                    ),
                )
            })
        })
        .collect()
}

fn r_summand(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    let mut out = Vec::new();
    for piece in ctx.pieces {
        for m in Measure::ALL {
            let lifts = if Measure::PLAIN.contains(&m) {
                piece.lifts_plain()
            } else {
                piece.lifts_tilde()
            };
            if lifts && piece.c.verdicts.get(m) == Verdict::Infinite {
                let w = piece.c.steps_for(m).find_map(|t| t.witness.clone());
                out.push(with_witness(
                    value(
                        m,
                        false,
                        format!("{} has {} = ∞", piece.describe(), m.key()),
                    ),
                    w,
                ));
            }
        }
    }
    out
}

fn r_hopf(_: &Ctx, st: &State) -> Vec<Conclusion> {
    let mut out = Vec::new();
    if st.get(Measure::S0) == Verdict::Zero {
        out.push(hopf(Hopf::Hopfian, "s0 = 0"));
    }
    if st.get(Measure::S0Tilde) == Verdict::Zero {
        out.push(hopf(Hopf::HereditarilyHopfian, "s0_t = 0"));
    }
    out
}

fn r_pierce(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.sole() {
        Some(Atom::PierceHopfian(p)) => {
            let note = format!("asserted Hopfian {}-group of size continuum", p);
            vec![
                value(Measure::S0, false, &note),
                value(Measure::Ns, true, &note),
                hopf(Hopf::Hopfian, note),
            ]
        }
        _ => vec![],
    }
}

fn r_proddiag(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.sole() {
        Some(Atom::ProductZp) => infinite(
            &[Measure::S, Measure::Ns],
            "the product of Z(p) over all primes",
            Some("product-diag-10".into()),
        ),
        _ => vec![],
    }
}

fn r_inj(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.sole() {
        Some(Atom::PAdic(p)) => vec![value(
            Measure::S0,
            true,
            format!(
                "endomorphisms of Jp({}) are multiplications by {}-adic integers",
                p, p
            ),
        )],
        _ => vec![],
    }
}

/// Ordered pairs of summand positions with a provably nonzero map between them.
fn nonzero_hom(a: &Atom, b: &Atom) -> bool {
    let inf_set = |x: &Atom| match x {
        Atom::FreeZ => Some(Vec::new()),
        Atom::RankOne(t) => Some(t.infinite_primes()),
        _ => None,
    };
    if matches!(a, Atom::FreeZ) || matches!(b, Atom::Rationals) {
        return true;
    }
    match (inf_set(a), b) {
        (Some(sa), Atom::PAdic(p)) => !sa.contains(p),
        (Some(sa), _) => inf_set(b).is_some_and(|sb| sa.iter().all(|p| sb.contains(p))),
        _ => false,
    }
}

fn r_dec(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    if !ctx.inv.is_torsion_free || ctx.d.summand_count() < Cardinal::finite(2) {
        return vec![];
    }
    let terms = ctx.d.summands();
    let repeated = terms.iter().find(|(_, m)| *m >= Cardinal::finite(2));
    let pair = terms.iter().enumerate().find_map(|(i, (a, _))| {
        terms
            .iter()
            .enumerate()
            .find(|&(j, (b, _))| i != j && nonzero_hom(a, b))
            .map(|(_, (b, _))| (a, b))
    });
    let note = match (repeated, pair) {
        (Some((a, m)), _) => format!("{} copies of {}; each is moved by a swap", m, a),
        (None, Some((a, b))) => format!("{} maps nontrivially into {}", a, b),
        (None, None) => return vec![],
    };
    infinite(
        &[Measure::S, Measure::Ns],
        &note,
        Some("z2-unipotent".into()),
    )
}

fn r_prod_fi(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    match ctx.sole() {
        Some(Atom::ProductZp) => vec![value(
            Measure::S0,
            true,
            "each Z(p) is fully invariant with s0 = 0",
        )],
        _ => vec![],
    }
}

fn r_nonhopf(ctx: &Ctx, _: &State) -> Vec<Conclusion> {
    for (atom, mult) in ctx.d.summands() {
        let reason = match atom {
            _ if !mult.is_finite() => Some(format!(
                "{} occurs {} times; the shift on the copies is onto with a kernel",
                atom, mult
            )),
            Atom::Prufer(_) => Some(format!(
                "multiplication by p on {} is onto with a kernel",
                atom
            )),
            Atom::StandardBasic(_) => {
                Some(format!("e_n ↦ e_(n-1) on {} is onto with a kernel", atom))
            }
            Atom::TorsionComplete { bounded: true, .. } => Some(format!(
                "{} has a summand Z(p^k)^(N), whose shift is onto with a kernel",
                atom
            )),
            _ => None,
        };
        if let Some(r) = reason {
            return vec![hopf(Hopf::NotHopfian, r)];
        }
    }
    vec![]
}

fn boxplus_triple(st: &State, ms: [Measure; 3]) -> Vec<Conclusion> {
    let [s, ns, s0] = ms;
    let (vs, vns, vs0) = (st.get(s), st.get(ns), st.get(s0));
    let mut out = Vec::new();
    let sum = vns.plus(vs0);
    if let Some(v) = sum.known() {
        let w = if v.is_zero() {
            None
        } else {
            st.witness_for(ns).or_else(|| st.witness_for(s0))
        };
        out.push(with_witness(
            value(
                s,
                v.is_zero(),
                format!("{} = {}, {} = {}", ns.key(), vns, s0.key(), vs0),
            ),
            w,
        ));
    }
    if vs == Verdict::Zero {
        out.push(value(ns, true, format!("{} = 0", s.key())));
        out.push(value(s0, true, format!("{} = 0", s.key())));
    }
    if vs == Verdict::Infinite {
        if vns == Verdict::Zero {
            out.push(with_witness(
                value(s0, false, format!("{} = ∞, {} = 0", s.key(), ns.key())),
                st.witness_for(s),
            ));
        }
        if vs0 == Verdict::Zero {
            out.push(with_witness(
                value(ns, false, format!("{} = ∞, {} = 0", s.key(), s0.key())),
                st.witness_for(s),
            ));
        }
    }
    out
}

fn r_boxplus(_: &Ctx, st: &State) -> Vec<Conclusion> {
    let mut out = boxplus_triple(st, Measure::PLAIN);
    out.extend(boxplus_triple(st, Measure::TILDE));
    out
}

/// Rules in firing order; witness-bearing rules come before generic ones.
const ENGINE: &[(&str, RuleFn)] = &[
    ("R-fin", r_fin),
    ("R-fg-s", r_fg_s),
    ("R-free", r_free),
    ("R-sumN", r_sum_n),
    ("R-basic", r_basic),
    ("R-pomega", r_pomega),
    ("R-rk1", r_rk1),
    ("R-divtor", r_divtor),
    ("R-proddiag", r_proddiag),
    ("R-dec", r_dec),
    ("R-bounded", r_bounded),
    ("R-ThB", r_thb),
    ("R-B2", r_b2),
    ("R-UK", r_uk),
    ("R-card", r_card),
    ("R-tcomp", r_tcomp),
    ("R-th2", r_th2),
    ("R-divtd", r_divtd),
    ("R-tf-rank", r_tf_rank),
    ("R-endorigid", r_endorigid),
    ("R-inj", r_inj),
    ("R-prod-fi", r_prod_fi),
    ("R-pierce", r_pierce),
    ("R-tilde-tor", r_tilde_tor),
    ("R-tilde-main", r_tilde_main),
    ("R-summand", r_summand),
    ("R-fi-sum", r_fi_sum),
    ("R-ridotti", r_ridotti),
    ("R-tilde-split", r_tilde_split),
    ("R-WADT", r_wadt),
    ("R-prop", r_prop),
    ("R-boxplus", r_boxplus),
    ("R-nonhopf", r_nonhopf),
    ("R-hopf", r_hopf),
];

/// Nesting limit for sub-classifications; every piece is strictly simpler, so
/// this only guards against mistakes.
const MAX_DEPTH: usize = 8;

fn pieces(d: &GroupDescriptor, inv: &DerivedInvariants, depth: usize) -> Vec<Piece> {
    if depth >= MAX_DEPTH {
        return Vec::new();
    }
    let mut out: Vec<(Role, GroupDescriptor)> = Vec::new();
    let terms = d.summands();
    if terms.len() >= 2 {
        for (a, m) in terms {
            out.push((
                Role::Summand,
                GroupDescriptor::new([(a.clone(), m.clone())]),
            ));
        }
    } else if let [(a, m)] = terms {
        if *m != Cardinal::one() {
            out.push((Role::Summand, GroupDescriptor::single(a.clone())));
        }
    }
    let named = d.named_primes();
    let mut comps: Vec<PrimeSpec> = named.iter().map(|&p| PrimeSpec::Specific(p)).collect();
    if d.has_every_prime() {
        comps.push(PrimeSpec::Every);
    }
    for spec in comps {
        let p = match spec {
            PrimeSpec::Specific(p) => p,
            PrimeSpec::Every => primes()
                .find(|q| !named.contains(q))
                .expect("infinitely many primes"),
        };
        out.push((Role::Primary(spec), d.p_component(p)));
    }
    if !inv.is_torsion && !inv.is_torsion_free {
        let summand = !d.atoms().any(|a| matches!(a, Atom::ProductZp));
        out.push((Role::TorsionPart, d.torsion_part()));
        out.push((Role::Quotient { summand }, d.torsion_free_quotient()));
    }
    if inv.is_torsion && named.len() == 1 && !d.has_every_prime() {
        let (div, red): (Vec<_>, Vec<_>) = terms
            .iter()
            .cloned()
            .partition(|(a, _)| matches!(a, Atom::Prufer(_)));
        if !div.is_empty() && !red.is_empty() {
            out.push((Role::Divisible, GroupDescriptor::new(div)));
            out.push((Role::Reduced, GroupDescriptor::new(red)));
        }
    }
    out.into_iter()
        .filter(|(_, g)| g != d && !g.is_trivial())
        .map(|(role, g)| Piece {
            role,
            c: classify_at(&g, depth + 1),
        })
        .collect()
}

fn assumptions(d: &GroupDescriptor) -> Vec<String> {
    d.atoms()
        .filter(|a| a.is_flag())
        .map(|a| {
            let what = match a {
                Atom::TorsionComplete { p, bounded } => format!(
                    "a {} torsion-complete {}-group{}",
                    if *bounded { "bounded" } else { "unbounded" },
                    p,
                    if *bounded {
                        ", taken to be infinite"
                    } else {
                        ""
                    }
                ),
                Atom::EndorigidTF {
                    rank,
                    pomega_all_zero,
                } => format!(
                    "a torsion-free group of rank {} with endomorphism ring Z and p^ω G {}",
                    rank,
                    if *pomega_all_zero {
                        "= 0 for all p"
                    } else {
                        "≠ 0 for some p"
                    }
                ),
                Atom::TotallyProjective(p) => {
                    format!("an infinite reduced totally projective {}-group", p)
                }
                Atom::POmegaPlus1Projective(p) => {
                    format!("an infinite reduced p^(ω+1)-projective {}-group", p)
                }
                Atom::PierceHopfian(p) => {
                    format!("a Hopfian {}-group of size continuum with ns = 0", p)
                }
                _ => unreachable!("flag atoms only"),
            };
            format!("{} is {}", a, what)
        })
        .collect()
}

fn classify_at(d: &GroupDescriptor, depth: usize) -> Classification {
    let inv = derive_invariants(d);
    let pieces = pieces(d, &inv, depth);
    let ctx = Ctx {
        d,
        inv: &inv,
        pieces: &pieces,
    };
    let mut st = State {
        verdicts: Verdicts::unknown(),
        hopf: Hopf::Unknown,
        trace: Vec::new(),
        conflicts: Vec::new(),
    };
    loop {
        let mut changed = false;
        for (id, f) in ENGINE {
            for c in f(&ctx, &st) {
                changed |= st.apply(id, c);
            }
        }
        if !changed {
            break;
        }
    }
    Classification {
        normalized: d.clone(),
        verdicts: st.verdicts,
        hopf: st.hopf,
        trace: st.trace,
        assumptions: assumptions(d),
        conflicts: st.conflicts,
        invariants: inv,
    }
}

/// Runs the rules to a fixpoint, closing under `s = ns ⊞ s0` and under the
/// hereditary bound after every pass.
pub fn classify(d: &GroupDescriptor) -> Classification {
    classify_at(d, 0)
}
