//! Rule identifiers and the statement each one applies.

/// One rule of the classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rule {
    pub id: &'static str,
    pub anchor: &'static str,
}

pub const RULES: &[Rule] = &[
    Rule {
        id: "R-fin",
        anchor: "a finite group admits no strings and is hereditarily Hopfian",
    },
    Rule {
        id: "R-fg-s",
        anchor: "finitely generated: s = ns, zero iff r0 <= 1; s0 = 0",
    },
    Rule {
        id: "R-free",
        anchor: "free: s = ns, zero iff rank <= 1; s0 = 0 iff the rank is finite",
    },
    Rule {
        id: "R-sumN",
        anchor: "infinitely many copies of a nonzero group: s = ns = s0 = ∞",
    },
    Rule {
        id: "R-bounded",
        anchor: "an infinite bounded p-group has s = ns = s0 = ∞",
    },
    Rule {
        id: "R-ThB",
        anchor: "torsion: s = s0, zero iff every p-component is finite",
    },
    Rule {
        id: "R-B2",
        anchor: "torsion with every p-rank finite: ns = 0",
    },
    Rule {
        id: "R-UK",
        anchor: "a reduced p-group with ns = 0 has finite finite-index Ulm-Kaplansky invariants",
    },
    Rule {
        id: "R-card",
        anchor: "a torsion group with ns = 0 has size at most the continuum",
    },
    Rule {
        id: "R-basic",
        anchor: "an unbounded direct sum of cyclic p-groups has ns = ∞",
    },
    Rule {
        id: "R-tcomp",
        anchor: "an unbounded torsion-complete p-group has s = ns = s0 = ∞",
    },
    Rule {
        id: "R-th2",
        anchor: "infinite reduced totally projective or p^(ω+1)-projective p-groups: s = ns = s0 = ∞",
    },
    Rule {
        id: "R-divtor",
        anchor: "a nonzero divisible torsion summand forces s0 = ∞",
    },
    Rule {
        id: "R-divtd",
        anchor: "divisible: s = 0 iff trivial; ns = 0 iff torsion with finite p-ranks; s0 = 0 iff torsion-free of finite rank",
    },
    Rule {
        id: "R-tf-rank",
        anchor: "torsion-free of finite rank: s0 = 0",
    },
    Rule {
        id: "R-pomega",
        anchor: "torsion-free with p^ω G ≠ 0 for some p: ns = ∞",
    },
    Rule {
        id: "R-endorigid",
        anchor: "endorigid torsion-free: s0 = 0 and s = ns, zero iff p^ω G = 0 for all p",
    },
    Rule {
        id: "R-rk1",
        anchor: "torsion-free of rank one: s = ns, zero iff the type has no ∞; s0 = 0",
    },
    Rule {
        id: "R-tilde-tor",
        anchor: "torsion: hereditary s = s0, zero iff every p-component is finite; hereditary ns = 0 iff every p-rank is finite",
    },
    Rule {
        id: "R-tilde-main",
        anchor: "hereditary s0 = 0 iff every p-component and r0 are finite; hereditary ns = 0 iff every p-rank is finite and G/t(G) has rank <= 1 with no ∞ in its type",
    },
    Rule {
        id: "R-tilde-split",
        anchor: "each hereditary string number of G is its value on t(G) ⊞ its value on G/t(G)",
    },
    Rule {
        id: "R-prop",
        anchor: "a hereditary string number bounds the plain one from above",
    },
    Rule {
        id: "R-WADT",
        anchor: "s0(G) <= s0(H) ⊞ s0(G/H) for a fully invariant subgroup H",
    },
    Rule {
        id: "R-fi-sum",
        anchor: "a direct sum of fully invariant subgroups has value zero iff every summand does",
    },
    Rule {
        id: "R-summand",
        anchor: "an infinite value on a direct summand or a fully invariant subgroup is inherited by G",
    },
    Rule {
        id: "R-hopf",
        anchor: "s0 = 0 implies Hopfian; hereditary s0 = 0 iff hereditarily Hopfian",
    },
    Rule {
        id: "R-pierce",
        anchor: "a Hopfian p-group of size continuum with s0 = ∞ and ns = 0",
    },
    Rule {
        id: "R-proddiag",
        anchor: "the product of Z(p) over all primes: a diagonal automorphism has an infinite orbit, so s = ns = ∞",
    },
    Rule {
        id: "R-inj",
        anchor: "a torsion-free group whose nonzero endomorphisms are injective has s0 = 0",
    },
    Rule {
        id: "R-ridotti",
        anchor: "a p-group is d(G) ⊕ R with R reduced, and each string number adds over the two",
    },
    Rule {
        id: "R-dec",
        anchor: "a torsion-free direct sum with a summand that is not fully invariant has s = ns = ∞",
    },
    Rule {
        id: "R-prod-fi",
        anchor: "a direct product of fully invariant subgroups with s0 = 0 has s0 = 0",
    },
    Rule {
        id: "R-nonhopf",
        anchor: "a summand with a surjective non-injective endomorphism makes G non-Hopfian",
    },
    Rule {
        id: "R-boxplus",
        anchor: "s = ns ⊞ s0, for plain and for hereditary string numbers",
    },
];

pub fn rule(id: &str) -> &'static Rule {
    RULES
        .iter()
        .find(|r| r.id == id)
        .unwrap_or_else(|| panic!("unknown rule {}", id))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = RULES.iter().map(|r| r.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), RULES.len());
        assert_eq!(rule("R-ThB").id, "R-ThB");
    }
}
