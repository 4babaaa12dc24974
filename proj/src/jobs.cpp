#include "skewlab/jobs.hpp"

#include "skewlab/agrarian.hpp"
#include "skewlab/crossed.hpp"
#include "skewlab/graphrings.hpp"
#include "skewlab/malcev.hpp"
#include "skewlab/rank.hpp"
#include "skewlab/textio.hpp"

#include <json.hpp>

#include <sstream>

namespace skewlab {

const char *const kToolVersion = "skewlab 0.1.0";

namespace {

using nlohmann::json;

std::string fnv1a64(const std::string &bytes)
{
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << h;
    return out.str();
}

// Options + report accumulator for one job run.
struct JobCtx {
    const std::map<std::string, std::string> &options;
    json report;
    std::string summary;
    int exitCode = 0;

    explicit JobCtx(const std::map<std::string, std::string> &opts) : options(opts)
    {
        report["inputs"] = json::array();
    }

    std::string opt(const std::string &key) const
    {
        auto it = options.find(key);
        if (it == options.end())
            throw InputError("missing option --" + key);
        return it->second;
    }
    std::string opt(const std::string &key, const std::string &fallback) const
    {
        auto it = options.find(key);
        return it == options.end() ? fallback : it->second;
    }
    long optInt(const std::string &key) const { return std::stol(opt(key)); }
    long optInt(const std::string &key, long fallback) const
    {
        auto it = options.find(key);
        return it == options.end() ? fallback : std::stol(it->second);
    }

    // Reads a file option, records its hash in the report.
    std::string readInput(const std::string &key)
    {
        std::string path = opt(key);
        std::string text = readFileText(path);
        report["inputs"].push_back({{"option", key}, {"path", path}, {"hash", fnv1a64(text)}});
        return text;
    }

    GroupFile groupInput(const std::string &key = "group")
    {
        return parseGroupDoc(parseTextDoc(readInput(key)));
    }
    TowerFile towerInput(const std::string &key = "tower")
    {
        return parseTowerDoc(parseTextDoc(readInput(key)));
    }
    FieldKind fieldOpt() { return FieldKind::parse(opt("field", "Q")); }

    void pass(const std::string &msg)
    {
        exitCode = 0;
        report["status"] = "pass";
        summary = msg;
    }
    void counterexample(const std::string &msg)
    {
        exitCode = 2;
        report["status"] = "counterexample";
        summary = msg;
    }
};

json bettiJson(const BettiReport &rep)
{
    json out;
    out["group"] = rep.groupName;
    out["ring"] = rep.towerDesc;
    out["euler"] = rep.euler;
    out["exact"] = rep.exact;
    out["betti"] = json::array();
    for (const auto &b : rep.betti)
        out["betti"].push_back({{"value", b.value}, {"exact", b.exact}, {"note", b.annotation}});
    return out;
}

std::string bettiBrief(const BettiReport &rep)
{
    std::string s = "b = [";
    for (size_t i = 0; i < rep.betti.size(); ++i)
        s += (i ? "," : "") + std::to_string(rep.betti[i].value);
    return s + "], euler = " + std::to_string(rep.euler) + (rep.exact ? "" : " (inexact)");
}

// ---------------------------------------------------------------------------
// Command bodies
// ---------------------------------------------------------------------------

void cmdNormalForm(JobCtx &c)
{
    auto g = c.groupInput();
    auto el = normalForm(g.group, parseWord(g.group, c.opt("word")));
    c.report["result"] = {{"word", c.opt("word")},
                          {"normalForm", el.str()},
                          {"isIdentity", el.isIdentity()}};
    c.pass("normal form: " + el.str());
}

void cmdTowerBuild(JobCtx &c)
{
    auto tf = c.towerInput();
    c.report["result"] = {{"describe", tf.tower.tower->describe()},
                          {"generators", tf.tower.tower->generatorNames()}};
    c.pass("built " + tf.tower.tower->describe());
}

void cmdInvert(JobCtx &c)
{
    auto tf = c.towerInput();
    TowerElem x = parseTowerElem(tf.tower, tf.field, c.opt("element"));
    TowerElem inv = x.inverse();
    bool ok = (x * inv).isOne() && (inv * x).isOne();
    c.report["result"] = {{"element", x.str()}, {"inverse", inv.str()}, {"bothSidesOne", ok}};
    if (ok)
        c.pass("inverse: " + inv.str());
    else
        c.counterexample("inverse failed the two-sided product check");
}

void cmdHfCheck(JobCtx &c)
{
    auto g = c.groupInput();
    if (c.options.count("subgroup")) { // overrides the file's [subgroup] section
        g.subgroupGens.clear();
        for (const auto &w : parseWordList(g.group, c.opt("subgroup")))
            g.subgroupGens.push_back(normalForm(g.group, w));
    }
    if (g.subgroupGens.empty())
        throw InputError("hf-check needs a [subgroup] section or --subgroup");
    auto pt = buildPolyZTower(g.group, c.fieldOpt());
    auto t = normalForm(g.group, parseWord(g.group, c.opt("t")));
    int range = static_cast<int>(c.optInt("range", 5));
    WitnessReport rep;
    std::string mode = c.opt("mode", "hf");
    if (mode == "hf")
        rep = hfWitnessCheck(pt, g.subgroupGens, t, range);
    else if (mode == "l") {
        std::vector<GroupElement> transversal;
        for (const auto &w : parseWordList(g.group, c.opt("transversal")))
            transversal.push_back(normalForm(g.group, w));
        rep = lWitnessCheck(pt, g.subgroupGens, transversal);
    } else
        throw InputError("mode must be hf or l");
    c.report["result"] = {{"mode", mode},
                          {"supported", rep.supported},
                          {"independent", rep.independent},
                          {"detail", rep.detail}};
    if (!rep.supported)
        throw UnsupportedError(rep.detail);
    if (rep.independent)
        c.pass("independence witness verified: " + rep.detail);
    else
        c.counterexample("dependence found: " + rep.detail);
}

void cmdCrossedInvert(JobCtx &c)
{
    auto g = c.groupInput();
    auto ct = buildCrossedTower(g.group, c.fieldOpt());
    auto a = parseAlgebraElement(g.group, c.fieldOpt(), c.opt("element"));
    TowerElem x = ct.embedAlgebra(a);
    try {
        TowerElem inv = x.inverse();
        bool ok = (x * inv).isOne() && (inv * x).isOne();
        c.report["result"] = {{"element", x.str()}, {"inverse", inv.str()}, {"bothSidesOne", ok}};
        if (ok)
            c.pass("inverse: " + inv.str());
        else
            c.counterexample("inverse failed the two-sided product check");
    } catch (const ZeroDivisorError &e) {
        c.report["result"] = {{"element", x.str()}, {"zeroDivisorWitness", e.witness.str()}};
        c.counterexample(std::string("zero divisor: ") + e.what());
    }
}

void cmdDomainFuzz(JobCtx &c)
{
    auto g = c.groupInput();
    auto ct = buildCrossedTower(g.group, c.fieldOpt());
    int trials = static_cast<int>(c.optInt("trials", 200));
    int support = static_cast<int>(c.optInt("support", 3));
    unsigned seed = static_cast<unsigned>(c.optInt("seed", 1));
    auto rep = domainFuzz(ct.tower, trials, support, seed);
    c.report["seed"] = seed;
    c.report["result"] = {{"trials", rep.trials},
                          {"zeroDivisorFound", rep.zeroDivisorFound},
                          {"detail", rep.detail}};
    if (rep.zeroDivisorFound) {
        c.report["result"]["factorA"] = rep.factorA.str();
        c.report["result"]["factorB"] = rep.factorB.str();
        c.counterexample("zero divisor found: " + rep.detail);
    } else
        c.pass(std::to_string(rep.trials) + " random products, no zero divisors");
}

void cmdRank(JobCtx &c)
{
    auto tf = c.towerInput();
    auto doc = parseTextDoc(c.readInput("matrix"));
    auto M = parseMatrixSection(tf.tower, tf.field, doc.need("matrix"));
    int r = rankOverTower(tf.tower.tower)(M);
    c.report["result"] = {{"rows", M.size()},
                          {"cols", M.empty() ? 0 : M[0].size()},
                          {"rank", r}};
    c.pass("rank = " + std::to_string(r));
}

void cmdRankAxioms(JobCtx &c)
{
    auto tf = c.towerInput();
    int trials = static_cast<int>(c.optInt("trials", 1000));
    unsigned seed = static_cast<unsigned>(c.optInt("seed", 1));
    auto rep = axiomSuite(rankOverTower(tf.tower.tower), tf.tower.tower,
                          defaultEntrySampler(tf.tower.tower), trials, seed);
    c.report["seed"] = seed;
    json viols = json::array();
    for (const auto &v : rep.violations)
        viols.push_back({{"axiom", v.axiom}, {"detail", v.detail}});
    c.report["result"] = {{"trials", rep.trials}, {"passed", rep.passed}, {"violations", viols}};
    if (rep.passed)
        c.pass(std::to_string(rep.trials) + " trials, all rank axioms hold");
    else
        c.counterexample(std::to_string(rep.violations.size()) + " axiom violations");
}

void cmdRankCompare(JobCtx &c)
{
    auto tf = c.towerInput();
    std::vector<TowerElem> images;
    {
        std::istringstream in(c.opt("images"));
        std::string piece;
        while (std::getline(in, piece, ','))
            images.push_back(parseTowerElem(tf.tower, tf.field, piece));
    }
    if (static_cast<int>(images.size()) != tf.tower.tower->numLaurentGens())
        throw InputError("--images must list one element per tower generator");
    auto rk = rankOverTower(tf.tower.tower);
    auto target = tf.tower.tower;
    auto rk2 = pullback(rk, [target, images](const TowerElem &x) {
        return evalHom(target, images, x);
    }, "evaluation at [" + c.opt("images") + "]");
    auto doc = parseTextDoc(c.readInput("matrices"));
    std::vector<TowerMatrix> samples;
    for (const auto &sec : doc.sections)
        if (sec.name.rfind("matrix", 0) == 0)
            samples.push_back(parseMatrixSection(tf.tower, tf.field, sec));
    if (samples.empty())
        throw InputError("no [matrix] sections in the matrices file");
    auto rep = compareOnSamples(rk, rk2, samples);
    static const char *names[] = {"equal", "less-or-equal", "greater-or-equal", "incomparable"};
    c.report["result"] = {{"samples", rep.samples},
                          {"order", names[static_cast<int>(rep.order)]},
                          {"detail", rep.detail}};
    c.pass("on this sample: " + std::string(names[static_cast<int>(rep.order)]) + "; " +
           rep.detail);
}

void cmdBetti(JobCtx &c)
{
    auto g = c.groupInput();
    auto rep = bettiForGroup(g.group, c.fieldOpt(), static_cast<int>(c.optInt("order", 4)));
    c.report["result"] = bettiJson(rep);
    c.pass(bettiBrief(rep));
}

void cmdEulerCheck(JobCtx &c)
{
    auto g = c.groupInput();
    auto field = c.fieldOpt();
    auto rep = bettiForGroup(g.group, field, static_cast<int>(c.optInt("order", 4)));
    auto dims = foxComplex(g.group, field).dims;
    std::string detail;
    bool ok = eulerCheck(rep, dims, &detail);
    c.report["result"] = bettiJson(rep);
    c.report["result"]["eulerCheck"] = ok;
    c.report["result"]["eulerDetail"] = detail;
    if (ok)
        c.pass("euler identity holds: " + detail);
    else
        c.counterexample("euler check failed: " + detail);
}

void cmdScalingCheck(JobCtx &c)
{
    auto g = c.groupInput();
    if (g.subgroupGens.empty())
        throw InputError("scaling-check needs a [subgroup] section in the group file");
    auto h = c.groupInput("sub");
    auto rep = scalingCheck(g.group, g.subgroupGens, h.group, c.fieldOpt(),
                            static_cast<int>(c.optInt("order", 4)));
    c.report["result"] = {{"passed", rep.passed},
                          {"index", rep.index},
                          {"ambient", bettiJson(rep.ambient)},
                          {"subgroup", bettiJson(rep.subgroup)},
                          {"detail", rep.detail}};
    if (rep.passed)
        c.pass("index " + std::to_string(rep.index) + " scaling holds: " + rep.detail);
    else
        c.counterexample("scaling failed: " + rep.detail);
}

void cmdZeroDivisorScan(JobCtx &c)
{
    auto g = c.groupInput();
    auto field = c.fieldOpt();
    int support = static_cast<int>(c.optInt("support", 2));
    std::vector<long> coeffs;
    {
        std::istringstream in(c.opt("coeffs", "1 -1"));
        long v;
        while (in >> v)
            coeffs.push_back(v);
    }
    std::string mode = c.opt("mode", "exhaustive");
    unsigned seed = static_cast<unsigned>(c.optInt("seed", 1));
    long long trials = c.optInt("trials", 2000);
    auto rep = zeroDivisorScan(g.group, field, support, coeffs, mode == "exhaustive", seed,
                               trials);
    if (mode == "random")
        c.report["seed"] = seed;
    c.report["result"] = {{"mode", rep.mode},
                          {"enumOrder", rep.enumOrder},
                          {"pairsTested", rep.pairsTested},
                          {"refused", rep.refused},
                          {"found", rep.found},
                          {"detail", rep.detail}};
    if (rep.refused)
        throw ResourceExceededError(rep.detail, "exhaustive pair budget 10^8");
    if (rep.found) {
        c.report["result"]["factorA"] = rep.factorA;
        c.report["result"]["factorB"] = rep.factorB;
        c.counterexample("zero divisor certificate: (" + rep.factorA + ") * (" + rep.factorB +
                         ") = 0");
    } else
        c.pass(std::to_string(rep.pairsTested) + " pairs tested, no zero divisors");
}

// Inline graph description: --edges "0 1 tree, 1 2 tree, 0 2 cross",
// --word "r0: t + 1 ; e0 ; r1: t ; e0^-1"; every vertex ring is the
// one-variable Laurent tower k(t).
void cmdGraphNf(JobCtx &c)
{
    auto field = c.fieldOpt();
    int vertices = static_cast<int>(c.optInt("vertices"));
    GraphOfRingsSpec spec;
    std::vector<PolyZTower> towers;
    for (int v = 0; v < vertices; ++v) {
        towers.push_back(
            buildPolyZTower(GroupSpec::makeFreeAbelian(1, "Z", {"t"}), field));
        spec.vertexRings.push_back(towers.back().tower);
    }
    {
        std::istringstream in(c.opt("edges"));
        std::string piece;
        while (std::getline(in, piece, ',')) {
            std::istringstream es(piece);
            RingEdge e;
            std::string kind;
            if (!(es >> e.from >> e.to >> kind) || (kind != "tree" && kind != "cross"))
                throw InputError("edges look like 'from to tree|cross', got '" + piece + "'");
            e.inTree = kind == "tree";
            spec.edges.push_back(e);
        }
    }
    spec.baseVertex = static_cast<int>(c.optInt("base", 0));
    spec.validate();

    RingWord w;
    {
        std::istringstream in(c.opt("word"));
        std::string piece;
        while (std::getline(in, piece, ';')) {
            std::string tok = piece;
            tok.erase(0, tok.find_first_not_of(" \t"));
            tok.erase(tok.find_last_not_of(" \t") + 1);
            if (tok.empty())
                continue;
            if (tok[0] == 'r') {
                auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw InputError("ring letters look like 'r<vertex>: <element>'");
                int v = std::stoi(tok.substr(1, colon - 1));
                if (v < 0 || v >= vertices)
                    throw InputError("ring-letter vertex out of range");
                w.push_back({false, v, parseTowerElem(towers[v], field, tok.substr(colon + 1)),
                             -1, 0});
            } else if (tok[0] == 'e') {
                int sign = 1;
                auto caret = tok.find('^');
                std::string idx = tok.substr(1, caret == std::string::npos ? std::string::npos
                                                                           : caret - 1);
                if (caret != std::string::npos) {
                    std::string p = tok.substr(caret + 1);
                    if (p == "-1")
                        sign = -1;
                    else if (p != "1")
                        throw InputError("stable-letter exponents are 1 or -1");
                }
                w.push_back({true, -1, TowerElem(), std::stoi(idx), sign});
            } else
                throw InputError("word letters start with r (ring) or e (stable)");
        }
    }
    checkLoopWord(spec, w);
    auto nf = normalizeRingWord(spec, w);
    auto treeBased = translateToTreeBased(spec, w);
    c.report["result"] = {{"normalForm", ringWordStr(spec, nf)},
                          {"treeBased", ringWordStr(spec, treeBased)},
                          {"letters", nf.size()}};
    c.pass("normal form: " + ringWordStr(spec, nf));
}

void cmdEmbedFuzz(JobCtx &c)
{
    int trials = static_cast<int>(c.optInt("trials", 100));
    unsigned seed = static_cast<unsigned>(c.optInt("seed", 1));
    auto rep = embedInjectivityFuzz(c.fieldOpt(), trials, seed);
    c.report["seed"] = seed;
    c.report["result"] = {{"trials", rep.trials},
                          {"allNonzero", rep.allNonzero},
                          {"detail", rep.detail}};
    if (rep.allNonzero)
        c.pass(std::to_string(rep.trials) + " embedded elements, all nonzero");
    else {
        c.report["result"]["kernelWitness"] = rep.kernelWitness;
        c.counterexample("kernel element found: " + rep.kernelWitness);
    }
}

using CommandFn = void (*)(JobCtx &);

const std::map<std::string, std::pair<CommandFn, std::string>> &commandTable()
{
    static const std::map<std::string, std::pair<CommandFn, std::string>> table = {
        {"normal-form", {cmdNormalForm, "normal form of a word: --group --word"}},
        {"tower-build", {cmdTowerBuild, "build and describe a tower: --tower"}},
        {"invert", {cmdInvert, "invert a tower element: --tower --element"}},
        {"hf-check",
         {cmdHfCheck, "independence witness: --group --t --range [--mode hf|l --transversal]"}},
        {"crossed-invert",
         {cmdCrossedInvert, "invert in a crossed product: --group --field --element"}},
        {"domain-fuzz",
         {cmdDomainFuzz, "random product scan in a crossed product: --group --trials --seed"}},
        {"rank", {cmdRank, "matrix rank over a tower: --tower --matrix"}},
        {"rank-axioms", {cmdRankAxioms, "rank-function axiom fuzz: --tower --trials --seed"}},
        {"rank-compare",
         {cmdRankCompare, "compare with an evaluation pullback: --tower --images --matrices"}},
        {"betti", {cmdBetti, "division-ring Betti numbers: --group --field --order"}},
        {"euler-check", {cmdEulerCheck, "Euler identity check: --group --field --order"}},
        {"scaling-check",
         {cmdScalingCheck, "finite-index scaling: --group (with [subgroup]) --sub --field"}},
        {"zerodivisor-scan",
         {cmdZeroDivisorScan,
          "zero-divisor scan: --group --field --support --coeffs --mode [--seed --trials]"}},
        {"graph-nf", {cmdGraphNf, "graph-of-rings normal form: --vertices --edges --word"}},
        {"embed-fuzz", {cmdEmbedFuzz, "free-group embedding fuzz: --field --trials --seed"}},
    };
    return table;
}

} // namespace

const std::map<std::string, std::string> &jobCommands()
{
    static const std::map<std::string, std::string> names = [] {
        std::map<std::string, std::string> out;
        for (const auto &[name, entry] : commandTable())
            out[name] = entry.second;
        return out;
    }();
    return names;
}

JobResult runJob(const std::string &command, const std::map<std::string, std::string> &options)
{
    JobCtx ctx(options);
    ctx.report["schema"] = 1;
    ctx.report["tool"] = kToolVersion;
    ctx.report["command"] = command;
    ctx.report["options"] = json(options);

    auto it = commandTable().find(command);
    JobResult out;
    try {
        if (it == commandTable().end())
            throw InputError("unknown command '" + command + "'");
        it->second.first(ctx);
    } catch (const std::exception &e) {
        ctx.exitCode = 1;
        ctx.report["status"] = "error";
        ctx.report["error"] = e.what();
        ctx.summary = std::string("error: ") + e.what();
    }
    out.exitCode = ctx.exitCode;
    out.reportJson = ctx.report.dump(2) + "\n";
    out.summary = ctx.summary;
    return out;
}

} // namespace skewlab
