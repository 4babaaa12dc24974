#include "skewlab/textio.hpp"

#include <fstream>
#include <sstream>

namespace skewlab {

namespace {

std::string trim(const std::string &s)
{
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> splitOn(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.push_back("");
    return out;
}

std::vector<std::string> tokens(const std::string &s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

[[noreturn]] void fail(int lineNo, const std::string &msg)
{
    throw InputError("line " + std::to_string(lineNo) + ": " + msg);
}

long parseLong(const std::string &s, int lineNo, const std::string &what)
{
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        fail(lineNo, "expected an integer for " + what + ", got '" + s + "'");
    }
}

} // namespace

std::string TextSection::get(const std::string &key, bool required,
                             const std::string &fallback) const
{
    const TextLine *found = nullptr;
    for (const auto &l : lines)
        if (l.key == key) {
            if (found)
                fail(l.lineNo, "duplicate key '" + key + "' in [" + name + "]");
            found = &l;
        }
    if (found)
        return found->value;
    if (required)
        fail(lineNo, "missing key '" + key + "' in [" + name + "]");
    return fallback;
}

bool TextSection::has(const std::string &key) const
{
    for (const auto &l : lines)
        if (l.key == key)
            return true;
    return false;
}

const TextSection *TextDoc::find(const std::string &name) const
{
    for (const auto &s : sections)
        if (s.name == name)
            return &s;
    return nullptr;
}

const TextSection &TextDoc::need(const std::string &name) const
{
    const TextSection *s = find(name);
    if (!s)
        throw InputError("missing [" + name + "] section");
    return *s;
}

TextDoc parseTextDoc(const std::string &text)
{
    TextDoc doc;
    bool sawFormat = false;
    std::istringstream in(text);
    std::string raw;
    int lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(lineNo, "malformed section header '" + line + "'");
            if (!sawFormat)
                fail(lineNo, "the 'format = 1' line must precede the first section");
            doc.sections.push_back({trim(line.substr(1, line.size() - 2)), {}, lineNo});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(lineNo, "expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(lineNo, "empty key");
        if (doc.sections.empty()) {
            if (key != "format")
                fail(lineNo, "expected 'format = 1' before any section");
            if (value != "1")
                fail(lineNo, "unsupported format version '" + value + "'");
            sawFormat = true;
            continue;
        }
        doc.sections.back().lines.push_back({key, value, lineNo});
    }
    if (!sawFormat)
        throw InputError("missing 'format = 1' line");
    return doc;
}

std::string readFileText(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// --------------------------------------------------------------------------
// Words and elements
// --------------------------------------------------------------------------

Word parseWord(const GroupSpecPtr &spec, const std::string &text)
{
    Word w;
    for (const auto &tok : tokens(text)) {
        if (tok == "1")
            continue;
        auto caret = tok.find('^');
        std::string name = caret == std::string::npos ? tok : tok.substr(0, caret);
        long exp = 1;
        if (caret != std::string::npos)
            exp = parseLong(tok.substr(caret + 1), 0, "exponent of '" + name + "'");
        int idx = spec->generatorIndex(name);
        for (long i = 0; i < std::abs(exp); ++i)
            w.push_back(exp > 0 ? idx : -idx);
    }
    return w;
}

std::vector<Word> parseWordList(const GroupSpecPtr &spec, const std::string &text)
{
    std::vector<Word> out;
    if (trim(text).empty())
        return out;
    for (const auto &part : splitOn(text, ','))
        out.push_back(parseWord(spec, part));
    return out;
}

namespace {

// Splits "2*a b + 1 - 1/3*b^-1" into (sign, coefficient text, word text)
// terms and feeds them to `emit`.
template <class Emit> void parseTerms(const std::string &text, Emit emit)
{
    std::vector<std::pair<int, std::string>> parts;
    std::string cur;
    int sign = 1;
    bool any = false;
    for (const auto &tok : tokens(text)) {
        if (tok == "+" || tok == "-") {
            if (any)
                parts.push_back({sign, trim(cur)});
            cur.clear();
            any = false;
            sign = tok == "+" ? 1 : -1;
            continue;
        }
        cur += (cur.empty() ? "" : " ") + tok;
        any = true;
    }
    if (any)
        parts.push_back({sign, trim(cur)});
    for (auto &[s, term] : parts) {
        if (term.empty())
            throw InputError("empty term in '" + text + "'");
        std::string coeffText = "1", wordText = term;
        auto star = term.find('*');
        if (star != std::string::npos) {
            coeffText = trim(term.substr(0, star));
            wordText = trim(term.substr(star + 1));
        } else if (term.find_first_not_of("0123456789/-") == std::string::npos) {
            coeffText = term;
            wordText = "1";
        }
        emit(s, coeffText, wordText);
    }
}

} // namespace

GroupAlgebraElement parseAlgebraElement(const GroupSpecPtr &spec, FieldKind field,
                                        const std::string &text)
{
    GroupAlgebraElement out(spec, field);
    parseTerms(text, [&](int sign, const std::string &coeff, const std::string &word) {
        Scalar c = Scalar::parse(field, coeff);
        if (sign < 0)
            c = -c;
        out.addTerm(normalForm(spec, parseWord(spec, word)), c);
    });
    return out;
}

// --------------------------------------------------------------------------
// Group files
// --------------------------------------------------------------------------

namespace {

// True when every image word is g^{+-1} for pairwise distinct g; such an
// action is inverted mechanically, anything else needs explicit inverse
// images in the file.
bool signedPermutation(const std::vector<Word> &action, std::vector<Word> &inv)
{
    int n = static_cast<int>(action.size());
    inv.assign(n, {});
    std::vector<bool> hit(n, false);
    for (int j = 0; j < n; ++j) {
        if (action[j].size() != 1)
            return false;
        int l = action[j][0];
        int tgt = std::abs(l) - 1;
        if (tgt < 0 || tgt >= n || hit[tgt])
            return false;
        hit[tgt] = true;
        inv[tgt] = {l > 0 ? j + 1 : -(j + 1)};
    }
    return true;
}

GroupSpecPtr parseGroupSection(const TextSection &sec)
{
    std::string kind = sec.get("kind");
    std::string name = sec.get("name", false, sec.name);
    std::vector<std::string> gens = tokens(sec.get("generators", false, ""));
    int rank = static_cast<int>(gens.size());

    if (kind == "free")
        return GroupSpec::makeFree(rank, name, gens);
    if (kind == "abelian")
        return GroupSpec::makeFreeAbelian(rank, name, gens);
    if (kind != "polyz")
        fail(sec.lineNo, "unknown group kind '" + kind + "' (free, abelian, polyz)");

    // A scratch free spec of the same generators, for parsing action words.
    auto scratch = GroupSpec::makeFree(rank, name, gens);
    std::vector<PolyZLayer> layers(rank);
    for (int i = 2; i <= rank; ++i) {
        std::string key = "layer " + std::to_string(i);
        PolyZLayer &L = layers[i - 1];
        if (sec.has(key))
            L.action = parseWordList(scratch, sec.get(key));
        else {
            for (int j = 1; j < i; ++j)
                L.action.push_back({j});
        }
        if (static_cast<int>(L.action.size()) != i - 1)
            fail(sec.lineNo, key + " must list " + std::to_string(i - 1) + " image words");
        std::string invKey = "layerinv " + std::to_string(i);
        if (sec.has(invKey))
            L.actionInv = parseWordList(scratch, sec.get(invKey));
        else if (!signedPermutation(L.action, L.actionInv))
            fail(sec.lineNo, "cannot invert " + key + " mechanically; add '" + invKey + "'");
        if (L.actionInv.size() != L.action.size())
            fail(sec.lineNo, invKey + " must list " + std::to_string(i - 1) + " image words");
    }
    return GroupSpec::makePolyZ(layers, name, gens);
}

GroupSpecPtr parseFiniteExtension(const TextDoc &doc, const TextSection &sec)
{
    FiniteExtensionData data;
    data.normal = parseGroupSection(doc.need("normal"));
    int nRank = data.normal->rank();

    auto rows = splitOn(sec.get("qmult"), '/');
    int q = static_cast<int>(rows.size());
    for (const auto &row : rows) {
        std::vector<int> r;
        for (const auto &t : tokens(row))
            r.push_back(static_cast<int>(parseLong(t, sec.lineNo, "qmult entry")));
        if (static_cast<int>(r.size()) != q)
            fail(sec.lineNo, "qmult must be a " + std::to_string(q) + "x" + std::to_string(q) +
                                 " table");
        data.qMult.push_back(std::move(r));
    }
    for (const auto &t : tokens(sec.get("qinv")))
        data.qInv.push_back(static_cast<int>(parseLong(t, sec.lineNo, "qinv entry")));
    if (static_cast<int>(data.qInv.size()) != q)
        fail(sec.lineNo, "qinv must list " + std::to_string(q) + " entries");

    std::vector<Word> identityImages;
    for (int j = 1; j <= nRank; ++j)
        identityImages.push_back({j});
    data.action.assign(q, identityImages);
    data.factorSet.assign(q, std::vector<Word>(q));
    for (int i = 1; i < q; ++i) {
        std::string key = "action " + std::to_string(i);
        if (!sec.has(key))
            continue;
        auto imgs = parseWordList(data.normal, sec.get(key));
        if (static_cast<int>(imgs.size()) != nRank)
            fail(sec.lineNo, key + " must list " + std::to_string(nRank) + " image words");
        data.action[i] = std::move(imgs);
    }
    for (const auto &l : sec.lines) {
        if (l.key.rfind("factor ", 0) != 0)
            continue;
        auto idx = tokens(l.key.substr(7));
        if (idx.size() != 2)
            fail(l.lineNo, "factor keys look like 'factor i j'");
        int i = static_cast<int>(parseLong(idx[0], l.lineNo, "factor index"));
        int j = static_cast<int>(parseLong(idx[1], l.lineNo, "factor index"));
        if (i < 0 || i >= q || j < 0 || j >= q)
            fail(l.lineNo, "factor index out of range");
        data.factorSet[i][j] = parseWord(data.normal, l.value);
    }
    return GroupSpec::makeFiniteExtension(std::move(data), sec.get("name", false, "ext"));
}

} // namespace

GroupFile parseGroupDoc(const TextDoc &doc)
{
    const TextSection &sec = doc.need("group");
    GroupFile out;
    if (sec.get("kind") == "finite-extension")
        out.group = parseFiniteExtension(doc, sec);
    else
        out.group = parseGroupSection(sec);
    if (const TextSection *sub = doc.find("subgroup")) {
        for (const auto &w : parseWordList(out.group, sub->get("generators")))
            out.subgroupGens.push_back(normalForm(out.group, w));
    }
    return out;
}

GroupFile readGroupFile(const std::string &path)
{
    return parseGroupDoc(parseTextDoc(readFileText(path)));
}

// --------------------------------------------------------------------------
// Tower files
// --------------------------------------------------------------------------

TowerFile parseTowerDoc(const TextDoc &doc)
{
    TowerFile out;
    out.field = FieldKind::parse(doc.need("tower").get("field"));
    GroupSpecPtr g = parseGroupSection(doc.need("group"));
    out.tower = buildPolyZTower(g, out.field);
    return out;
}

TowerFile readTowerFile(const std::string &path)
{
    return parseTowerDoc(parseTextDoc(readFileText(path)));
}

TowerElem parseTowerElem(const PolyZTower &pt, FieldKind field, const std::string &text)
{
    return pt.embedAlgebra(parseAlgebraElement(pt.group, field, text));
}

std::vector<std::vector<TowerElem>> parseMatrixSection(const PolyZTower &pt, FieldKind field,
                                                       const TextSection &sec)
{
    int rows = static_cast<int>(parseLong(sec.get("rows"), sec.lineNo, "rows"));
    int cols = static_cast<int>(parseLong(sec.get("cols"), sec.lineNo, "cols"));
    if (rows < 0 || cols < 0)
        fail(sec.lineNo, "matrix dimensions must be nonnegative");
    std::vector<std::vector<TowerElem>> M(rows,
                                          std::vector<TowerElem>(cols, TowerElem::zero(pt.tower)));
    for (const auto &l : sec.lines) {
        if (l.key.rfind("entry ", 0) != 0)
            continue;
        auto idx = tokens(l.key.substr(6));
        if (idx.size() != 2)
            fail(l.lineNo, "entry keys look like 'entry i j'");
        int i = static_cast<int>(parseLong(idx[0], l.lineNo, "row index"));
        int j = static_cast<int>(parseLong(idx[1], l.lineNo, "column index"));
        if (i < 1 || i > rows || j < 1 || j > cols)
            fail(l.lineNo, "entry index out of range");
        M[i - 1][j - 1] = parseTowerElem(pt, field, l.value);
    }
    return M;
}

} // namespace skewlab
