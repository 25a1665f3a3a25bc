//! Line-oriented text formats.
//!
//! Belief base, one entry per line, sorted by rank descending then text.
//! Fields are TAB-separated (spaces below):
//!
//! ```text
//! # comment
//! 1.000  P  pkw(sculpture) -> pkw(art)
//! 0.856  -  pkw(business)
//! ```
//!
//! Corpus, one document per line: `id<TAB>R|N|?<TAB>kw1,kw2,...`.
//!
//! Writers emit canonical text, so `write(parse(write(x))) == write(x)`.
//! Comments are not preserved.

mod corpus;
mod profile;

pub use corpus::{parse_corpus, write_corpus};
pub use profile::{parse_profile, write_profile};

use crate::entrenchment::{Entry, EntrenchmentRanking};
use crate::error::Error;
use crate::logic::{parse_sentence, Sentence};
use crate::rank::Rank;

pub(crate) fn format_error(line: usize, message: impl Into<String>) -> Error {
    Error::Format { line, message: message.into() }
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

/// One `rank<TAB>flags<TAB>formula` record.
pub(crate) fn parse_record(line: &str, lineno: usize) -> Result<Entry, Error> {
    let mut fields = line.splitn(3, '\t');
    let (Some(rank), Some(flags), Some(text)) = (fields.next(), fields.next(), fields.next()) else {
        return Err(format_error(lineno, "expected `rank<TAB>flags<TAB>formula`"));
    };
    let rank: Rank = rank
        .trim()
        .parse()
        .map_err(|e: Error| format_error(lineno, e.to_string()))?;
    let protected = match flags.trim() {
        "P" => true,
        "-" | "" => false,
        other => return Err(format_error(lineno, format!("unknown flags {other:?}"))),
    };
    let sentence = parse_sentence(text.trim()).map_err(|e| format_error(lineno, e.to_string()))?;
    if rank.is_zero() {
        return Err(format_error(lineno, "explicit entries need a non-zero rank"));
    }
    if protected && !rank.is_max() {
        return Err(format_error(lineno, "protected entries must be ranked 1.000"));
    }
    Ok(Entry { sentence, rank, protected })
}

fn write_record(out: &mut String, e: &Entry) {
    let flags = if e.protected { "P" } else { "-" };
    out.push_str(&format!("{}\t{}\t{}\n", e.rank, flags, e.sentence));
}

pub(crate) fn push_entry(
    ranking: &mut EntrenchmentRanking,
    entry: Entry,
    lineno: usize,
) -> Result<(), Error> {
    if ranking.get(&entry.sentence).is_some() {
        return Err(format_error(lineno, format!("duplicate entry `{}`", entry.sentence)));
    }
    ranking.insert_entry(entry);
    Ok(())
}

/// Records from `lines`, numbered from `first_line`.
pub(crate) fn parse_records<'a, I>(lines: I) -> Result<EntrenchmentRanking, Error>
where
    I: IntoIterator<Item = (usize, &'a str)>,
{
    let mut ranking = EntrenchmentRanking::new();
    for (lineno, line) in lines {
        if is_skippable(line) {
            continue;
        }
        push_entry(&mut ranking, parse_record(line, lineno)?, lineno)?;
    }
    Ok(ranking)
}

pub fn parse_belief_base(text: &str) -> Result<EntrenchmentRanking, Error> {
    parse_records(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

pub fn write_belief_base(ranking: &EntrenchmentRanking) -> String {
    let mut out = String::new();
    for e in ranking.sorted_entries() {
        write_record(&mut out, e);
    }
    out
}

/// Domain knowledge: belief-base records, or bare formulas and schemas which
/// become protected entries at rank 1.
pub fn parse_domain(text: &str) -> Result<EntrenchmentRanking, Error> {
    let mut ranking = EntrenchmentRanking::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if is_skippable(line) {
            continue;
        }
        let entry = if line.contains('\t') {
            parse_record(line, lineno)?
        } else {
            let sentence: Sentence =
                parse_sentence(line.trim()).map_err(|e| format_error(lineno, e.to_string()))?;
            Entry { sentence, rank: Rank::ONE, protected: true }
        };
        push_entry(&mut ranking, entry, lineno)?;
    }
    Ok(ranking)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "1.000\tP\tpkw(sculpture) -> pkw(art)\n\
                        0.856\t-\t!pkw(art)\n\
                        0.856\t-\tpkw(business)\n\
                        0.785\t-\t!pkw(sculpture)\n";

    #[test]
    fn belief_base_round_trips() {
        let b = parse_belief_base(BASE).unwrap();
        assert_eq!(b.len(), 4);
        assert!(b.is_protected(&parse_sentence("pkw(sculpture) -> pkw(art)").unwrap()));
        assert_eq!(write_belief_base(&b), BASE);
    }

    #[test]
    fn writer_sorts_and_canonicalizes() {
        let messy = "# domain\n0.785\t-\t! PKW(Sculpture)\n\n1\tP\t(pkw(sculpture) -> pkw(art))\n0.856\t\tpkw(business)\n0.856\t-\t!pkw(art)\n";
        let b = parse_belief_base(messy).unwrap();
        assert_eq!(write_belief_base(&b), BASE);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "0.5\t-\tp(a)\n0.4\t-\tp(a) &\n";
        match parse_belief_base(bad) {
            Err(Error::Format { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_belief_base("0.5\tX\tp(a)\n"), Err(Error::Format { line: 1, .. })));
        assert!(matches!(parse_belief_base("0.5\tP\tp(a)\n"), Err(Error::Format { .. })));
        assert!(matches!(parse_belief_base("1.5\t-\tp(a)\n"), Err(Error::Format { .. })));
        assert!(matches!(parse_belief_base("0.5\t-\tp(a)\n0.4\t-\tp(a)\n"), Err(Error::Format { line: 2, .. })));
        assert!(matches!(parse_belief_base("0.5 p(a)\n"), Err(Error::Format { line: 1, .. })));
    }

    #[test]
    fn domain_lines_default_to_protected() {
        let d = parse_domain("forall x. bird(x) -> fly(x)\n0.9\t-\tpenguin(tweety)\n").unwrap();
        let rule = parse_sentence("forall x. bird(x) -> fly(x)").unwrap();
        assert!(d.is_protected(&rule));
        assert_eq!(d.rank(&rule), Rank::ONE);
        assert_eq!(d.rank(&parse_sentence("penguin(tweety)").unwrap()), Rank::from_milli(900));
    }
}
