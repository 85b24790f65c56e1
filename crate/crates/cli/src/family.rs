use anyhow::{bail, Context, Result};
use ssc_core::families::FamilySpec;

pub const FAMILIES: &str =
    "path, cycle, complete, bipartite, threshold, tree, caterpillar, grid, honeycomb, cograph, bipperm, splitlb, treelb";

fn num(arg: &str) -> Result<usize> {
    arg.parse().with_context(|| format!("bad number '{arg}'"))
}

/// Family parameters as given on the `gen` command line.
///
/// `bipartite A B`, `grid R C`, `threshold 1101` (1 = dominating vertex),
/// `caterpillar 3,0,2` (leaves per spine vertex); every other family takes a
/// single size. Random families use `seed`.
pub fn parse_family(name: &str, args: &[String], seed: u64) -> Result<FamilySpec> {
    let want = |k: usize| -> Result<()> {
        if args.len() != k {
            bail!("{name} takes {k} argument(s), got {}", args.len());
        }
        Ok(())
    };
    let spec = match name {
        "bipartite" | "grid" => {
            want(2)?;
            let (a, b) = (num(&args[0])?, num(&args[1])?);
            if name == "grid" {
                FamilySpec::Grid { rows: a, cols: b }
            } else {
                FamilySpec::CompleteBipartite { a, b }
            }
        }
        "threshold" => {
            want(1)?;
            let sequence = args[0]
                .chars()
                .map(|c| match c {
                    '1' => Ok(true),
                    '0' => Ok(false),
                    _ => bail!("threshold sequence must be 0/1, got '{c}'"),
                })
                .collect::<Result<_>>()?;
            FamilySpec::Threshold { sequence }
        }
        "caterpillar" => {
            want(1)?;
            let leaves = args[0].split(',').map(num).collect::<Result<_>>()?;
            FamilySpec::Caterpillar { leaves }
        }
        _ => {
            want(1)?;
            sized(name, num(&args[0])?, seed)?
        }
    };
    Ok(spec)
}

/// One instance per integer size, for the bench matrix. Two-parameter
/// families are squared up, threshold alternates isolated and dominating
/// vertices, and caterpillars get two leaves per spine vertex.
pub fn sized(name: &str, n: usize, seed: u64) -> Result<FamilySpec> {
    Ok(match name {
        "path" => FamilySpec::Path { n },
        "cycle" => FamilySpec::Cycle { n },
        "complete" => FamilySpec::Complete { n },
        "bipartite" => FamilySpec::CompleteBipartite { a: n, b: n },
        "grid" => FamilySpec::Grid { rows: n, cols: n },
        "threshold" => FamilySpec::Threshold { sequence: (0..n).map(|i| i % 2 == 1).collect() },
        "caterpillar" => FamilySpec::Caterpillar { leaves: vec![2; n] },
        "tree" => FamilySpec::Tree { n, seed },
        "cograph" => FamilySpec::Cograph { n, seed },
        "bipperm" => FamilySpec::BipartitePermutation { n, seed },
        "honeycomb" => FamilySpec::Honeycomb { size: n },
        "splitlb" => FamilySpec::SplitLb { n },
        "treelb" => FamilySpec::TreeLb { d: n },
        _ => bail!("unknown family '{name}' (known: {FAMILIES})"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(a: &[&str]) -> Vec<String> {
        a.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_family_arguments() {
        assert_eq!(parse_family("grid", &args(&["2", "3"]), 0).unwrap(), FamilySpec::Grid { rows: 2, cols: 3 });
        assert_eq!(
            parse_family("threshold", &args(&["101"]), 0).unwrap(),
            FamilySpec::Threshold { sequence: vec![true, false, true] }
        );
        assert_eq!(
            parse_family("caterpillar", &args(&["3,0"]), 0).unwrap(),
            FamilySpec::Caterpillar { leaves: vec![3, 0] }
        );
        assert_eq!(parse_family("tree", &args(&["5"]), 9).unwrap(), FamilySpec::Tree { n: 5, seed: 9 });
        assert!(parse_family("grid", &args(&["2"]), 0).is_err());
        assert!(parse_family("threshold", &args(&["12"]), 0).is_err());
        assert!(parse_family("nope", &args(&["2"]), 0).is_err());
    }
}
