#pragma once

#include "skewlab/tower.hpp"

#include <string>
#include <vector>

namespace skewlab {

// ---------------------------------------------------------------------------
// Line-oriented "format = 1" documents: '#' comments, "[section]" headers,
// "key = value" lines (keys may contain spaces, e.g. "layer 2").  The format
// line must precede the first section.  Parse errors carry line numbers.
// ---------------------------------------------------------------------------

struct TextLine {
    std::string key, value;
    int lineNo = 0;
};

struct TextSection {
    std::string name;
    std::vector<TextLine> lines;
    int lineNo = 0;

    // Value of a unique key; throws when `required` and absent.
    std::string get(const std::string &key, bool required = true,
                    const std::string &fallback = "") const;
    bool has(const std::string &key) const;
};

struct TextDoc {
    std::vector<TextSection> sections;
    const TextSection *find(const std::string &name) const; // first match or null
    const TextSection &need(const std::string &name) const; // throws when absent
};

TextDoc parseTextDoc(const std::string &text);
std::string readFileText(const std::string &path);

// ---------------------------------------------------------------------------
// Words and algebra elements over a group's named generators.
//   word:    "a b^-1 a^2"; "1" or "" is the identity
//   element: terms joined by + / -, each "c", "word" or "c*word",
//            e.g. "2*a b + 1 - 1/3*b^-1"
// ---------------------------------------------------------------------------

Word parseWord(const GroupSpecPtr &spec, const std::string &text);
std::vector<Word> parseWordList(const GroupSpecPtr &spec, const std::string &text); // ','-split
GroupAlgebraElement parseAlgebraElement(const GroupSpecPtr &spec, FieldKind field,
                                        const std::string &text);

// ---------------------------------------------------------------------------
// Group files (.grp): a [group] section, for finite extensions a [normal]
// section, optionally a [subgroup] section with generator words.
// ---------------------------------------------------------------------------

struct GroupFile {
    GroupSpecPtr group;
    std::vector<GroupElement> subgroupGens;
};

GroupFile parseGroupDoc(const TextDoc &doc);
GroupFile readGroupFile(const std::string &path);

// ---------------------------------------------------------------------------
// Tower files (.twr): a [tower] section naming the base field plus a [group]
// section (Z, free-abelian or poly-Z); the tower is the group's canonical
// iterated Laurent tower over that field.
// ---------------------------------------------------------------------------

struct TowerFile {
    FieldKind field;
    PolyZTower tower;
};

TowerFile parseTowerDoc(const TextDoc &doc);
TowerFile readTowerFile(const std::string &path);

// Tower-element expressions use the same term syntax as algebra elements
// with words in the group's generators; parsed via the tower embedding.
TowerElem parseTowerElem(const PolyZTower &pt, FieldKind field, const std::string &text);

// [matrix] section: "rows = m", "cols = n", "entry i j = expr" (1-based,
// missing entries are zero).
std::vector<std::vector<TowerElem>> parseMatrixSection(const PolyZTower &pt, FieldKind field,
                                                       const TextSection &sec);

} // namespace skewlab
