#include "skewlab/skewlab.h"

#include "skewlab/jobs.hpp"
#include "skewlab/textio.hpp"

#include <cstdlib>
#include <cstring>

using namespace skewlab;

namespace {

thread_local std::string g_lastError;
thread_local int g_lastCode = SL_OK;

void setError(int code, const std::string &msg)
{
    g_lastCode = code;
    g_lastError = msg;
}

int codeOf(const std::exception &e)
{
    if (dynamic_cast<const InputError *>(&e))
        return SL_ERR_INPUT;
    if (dynamic_cast<const MismatchError *>(&e))
        return SL_ERR_MISMATCH;
    if (dynamic_cast<const DivisionByZeroError *>(&e))
        return SL_ERR_DIVZERO;
    if (dynamic_cast<const ResourceExceededError *>(&e))
        return SL_ERR_RESOURCE;
    if (dynamic_cast<const UnsupportedError *>(&e))
        return SL_ERR_UNSUPPORTED;
    return SL_ERR_OTHER;
}

char *dupString(const std::string &s)
{
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs `body`, routing exceptions into the thread-local error slot.
template <class T, class F> T *wrapPtr(F body)
{
    try {
        g_lastCode = SL_OK;
        return body();
    } catch (const std::exception &e) {
        setError(codeOf(e), e.what());
        return nullptr;
    }
}

template <class F> int wrapInt(F body)
{
    try {
        g_lastCode = SL_OK;
        return body();
    } catch (const std::exception &e) {
        setError(codeOf(e), e.what());
        return -1;
    }
}

} // namespace

struct sl_group {
    GroupFile file;
};

struct sl_tower {
    TowerFile file;
};

struct sl_elem {
    TowerElem value;
    FieldKind field;
};

extern "C" {

const char *sl_version(void) { return kToolVersion; }

const char *sl_last_error(void) { return g_lastError.c_str(); }

int sl_last_error_code(void) { return g_lastCode; }

void sl_string_free(char *s) { std::free(s); }

/* -- groups ------------------------------------------------------------- */

sl_group *sl_group_from_text(const char *text)
{
    return wrapPtr<sl_group>([&] { return new sl_group{parseGroupDoc(parseTextDoc(text))}; });
}

sl_group *sl_group_from_file(const char *path)
{
    return wrapPtr<sl_group>([&] { return new sl_group{readGroupFile(path)}; });
}

void sl_group_free(sl_group *g) { delete g; }

const char *sl_group_name(const sl_group *g) { return g->file.group->name.c_str(); }

int sl_group_rank(const sl_group *g) { return g->file.group->rank(); }

int sl_group_subgroup_size(const sl_group *g)
{
    return static_cast<int>(g->file.subgroupGens.size());
}

char *sl_group_normal_form(const sl_group *g, const char *word)
{
    return wrapPtr<char>([&] {
        return dupString(normalForm(g->file.group, parseWord(g->file.group, word)).str());
    });
}

int sl_group_is_identity(const sl_group *g, const char *word)
{
    return wrapInt([&] {
        return normalForm(g->file.group, parseWord(g->file.group, word)).isIdentity() ? 1 : 0;
    });
}

/* -- towers and elements ------------------------------------------------ */

sl_tower *sl_tower_from_text(const char *text)
{
    return wrapPtr<sl_tower>([&] { return new sl_tower{parseTowerDoc(parseTextDoc(text))}; });
}

sl_tower *sl_tower_from_file(const char *path)
{
    return wrapPtr<sl_tower>([&] { return new sl_tower{readTowerFile(path)}; });
}

void sl_tower_free(sl_tower *t) { delete t; }

char *sl_tower_describe(const sl_tower *t)
{
    return wrapPtr<char>([&] { return dupString(t->file.tower.tower->describe()); });
}

sl_elem *sl_tower_parse_elem(const sl_tower *t, const char *expr)
{
    return wrapPtr<sl_elem>([&] {
        return new sl_elem{parseTowerElem(t->file.tower, t->file.field, expr), t->file.field};
    });
}

void sl_elem_free(sl_elem *e) { delete e; }

char *sl_elem_str(const sl_elem *e)
{
    return wrapPtr<char>([&] { return dupString(e->value.str()); });
}

sl_elem *sl_elem_add(const sl_elem *a, const sl_elem *b)
{
    return wrapPtr<sl_elem>([&] { return new sl_elem{a->value + b->value, a->field}; });
}

sl_elem *sl_elem_sub(const sl_elem *a, const sl_elem *b)
{
    return wrapPtr<sl_elem>([&] { return new sl_elem{a->value - b->value, a->field}; });
}

sl_elem *sl_elem_mul(const sl_elem *a, const sl_elem *b)
{
    return wrapPtr<sl_elem>([&] { return new sl_elem{a->value * b->value, a->field}; });
}

sl_elem *sl_elem_inverse(const sl_elem *a)
{
    return wrapPtr<sl_elem>([&] { return new sl_elem{a->value.inverse(), a->field}; });
}

int sl_elem_eq(const sl_elem *a, const sl_elem *b)
{
    return wrapInt([&] { return a->value == b->value ? 1 : 0; });
}

int sl_elem_is_zero(const sl_elem *a)
{
    return wrapInt([&] { return a->value.isZero() ? 1 : 0; });
}

int sl_elem_is_one(const sl_elem *a)
{
    return wrapInt([&] { return a->value.isOne() ? 1 : 0; });
}

/* -- jobs --------------------------------------------------------------- */

int sl_run_job(const char *command, const char *const *opts, int nopts, char **report_json,
               char **summary)
{
    try {
        g_lastCode = SL_OK;
        if (nopts % 2 != 0)
            throw InputError("options must be key/value pairs");
        std::map<std::string, std::string> options;
        for (int i = 0; i + 1 < nopts; i += 2)
            options[opts[i]] = opts[i + 1];
        JobResult r = runJob(command, options);
        if (report_json)
            *report_json = dupString(r.reportJson);
        if (summary)
            *summary = dupString(r.summary);
        return r.exitCode;
    } catch (const std::exception &e) {
        setError(codeOf(e), e.what());
        if (report_json)
            *report_json = dupString("");
        if (summary)
            *summary = dupString(std::string("error: ") + e.what());
        return 1;
    }
}

char *sl_job_commands(void)
{
    return wrapPtr<char>([&] {
        std::string out;
        for (const auto &[name, synopsis] : jobCommands())
            out += name + ": " + synopsis + "\n";
        return dupString(out);
    });
}

} // extern "C"
