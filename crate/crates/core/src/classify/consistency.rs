use super::engine::{Classification, Hopf, Measure};
use crate::value::Verdict;

/// Checks one triple `(s, ns, s0)` against `s = ns ⊞ s0` and its closure.
fn check_triple(c: &Classification, ms: [Measure; 3], out: &mut Vec<String>) {
    let [s, ns, s0] = ms.map(|m| c.verdicts.get(m));
    let [ks, kns, ks0] = ms.map(Measure::key);
    let sum = ns.plus(s0);
    if s.is_known() && sum.is_known() && s != sum {
        out.push(format!(
            "{}={}⊞{} broken: {} = {}, {} = {}, {} = {}",
            ks, kns, ks0, ks, s, kns, ns, ks0, s0
        ));
    }
    if !s.is_known() && sum.is_known() {
        out.push(format!("{} = ? although {} ⊞ {} = {}", ks, kns, ks0, sum));
    }
    if s == Verdict::Zero {
        for (k, v) in [(kns, ns), (ks0, s0)] {
            if v == Verdict::Unknown {
                out.push(format!("{} = ? although {} = 0 forces {} = 0", k, ks, k));
            }
        }
    }
    if s == Verdict::Infinite {
        for ((k, v), (ko, vo)) in [((kns, ns), (ks0, s0)), ((ks0, s0), (kns, ns))] {
            if v == Verdict::Zero && vo == Verdict::Unknown {
                out.push(format!(
                    "{} = ? although {} = ∞ and {} = 0 force {} = ∞",
                    ko, ks, k, ko
                ));
            }
        }
    }
}

/// Lists every violation of the invariants a classification must satisfy;
/// empty when it is sound.
pub fn consistency_check(c: &Classification) -> Vec<String> {
    let mut out = Vec::new();
    check_triple(c, Measure::PLAIN, &mut out);
    check_triple(c, Measure::TILDE, &mut out);
    for m in Measure::PLAIN {
        let (plain, tilde) = (c.verdicts.get(m), c.verdicts.get(m.partner()));
        if tilde == Verdict::Zero && plain != Verdict::Zero {
            out.push(format!(
                "{} = 0 but {} = {}",
                m.partner().key(),
                m.key(),
                plain
            ));
        }
    }
    let s0 = c.verdicts.s0;
    let s0_t = c.verdicts.s0_t;
    if s0 == Verdict::Zero && c.hopf == Hopf::NotHopfian {
        out.push("s0 = 0 but G is not Hopfian".into());
    }
    if s0_t == Verdict::Zero && c.hopf != Hopf::HereditarilyHopfian {
        out.push(format!("s0_t = 0 but hopf = {}", c.hopf.name()));
    }
    if s0_t == Verdict::Infinite && c.hopf == Hopf::HereditarilyHopfian {
        out.push("s0_t = ∞ but G is hereditarily Hopfian".into());
    }
    out.extend(c.conflicts.iter().map(|x| format!("rule conflict: {}", x)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::engine::classify;
    use crate::classify::parse::parse_descriptor;
    use Verdict::{Infinite as I, Unknown as U, Zero as Z};

    fn base() -> Classification {
        classify(&parse_descriptor("Z").unwrap())
    }

    #[test]
    fn table_rows_are_consistent() {
        for s in [
            "Z",
            "Z^2",
            "Q",
            "Jp(3)",
            "Prufer(2)",
            "Prufer(*)",
            "Bp(2)",
            "C(2,1)^aleph0",
        ] {
            let c = classify(&parse_descriptor(s).unwrap());
            assert!(consistency_check(&c).is_empty(), "{}", s);
        }
    }

    #[test]
    fn broken_sum() {
        let mut c = base();
        c.verdicts.s0 = I;
        c.hopf = Hopf::Unknown;
        c.verdicts.s0_t = I;
        let v = consistency_check(&c);
        assert!(v.iter().any(|x| x.contains("s=ns⊞s0 broken")), "{:?}", v);
    }

    #[test]
    fn missed_closure() {
        let mut c = base();
        c.verdicts.ns = U;
        let v = consistency_check(&c);
        assert!(v.iter().any(|x| x.starts_with("ns = ?")), "{:?}", v);
    }

    #[test]
    fn tilde_bound_and_hopf() {
        let mut c = classify(&parse_descriptor("Prufer(2)").unwrap());
        c.verdicts.ns_t = Z;
        c.verdicts.ns = I;
        assert!(consistency_check(&c)
            .iter()
            .any(|x| x == "ns_t = 0 but ns = ∞"));
        let mut c = base();
        c.hopf = Hopf::NotHopfian;
        let v = consistency_check(&c);
        assert!(v.contains(&"s0 = 0 but G is not Hopfian".to_string()));
        assert!(v.contains(&"s0_t = 0 but hopf = NotHopfian".to_string()));
    }
}
