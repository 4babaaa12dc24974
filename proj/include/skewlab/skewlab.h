#ifndef SKEWLAB_H
#define SKEWLAB_H

/* C interface to the computable-division-ring toolkit.  All functions are
 * non-throwing; failures return NULL (pointers) or a negative value (ints)
 * and leave a message in sl_last_error().  Strings returned as char* are
 * heap-allocated and released with sl_string_free(). */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sl_group sl_group; /* a parsed group file (group + subgroup) */
typedef struct sl_tower sl_tower; /* a parsed tower file */
typedef struct sl_elem sl_elem;   /* an element of a tower */

enum {
    SL_OK = 0,
    SL_ERR_INPUT = 1,
    SL_ERR_MISMATCH = 2,
    SL_ERR_DIVZERO = 3,
    SL_ERR_RESOURCE = 4,
    SL_ERR_UNSUPPORTED = 5,
    SL_ERR_OTHER = 6
};

const char *sl_version(void);
/* Message and code of the most recent failure on this thread. */
const char *sl_last_error(void);
int sl_last_error_code(void);
void sl_string_free(char *s);

/* -- groups ------------------------------------------------------------- */

sl_group *sl_group_from_text(const char *text);
sl_group *sl_group_from_file(const char *path);
void sl_group_free(sl_group *g);
/* Owned by the handle; valid until sl_group_free. */
const char *sl_group_name(const sl_group *g);
int sl_group_rank(const sl_group *g);
int sl_group_subgroup_size(const sl_group *g);
/* Normal form of a word ("a b^-1"); NULL on parse failure. */
char *sl_group_normal_form(const sl_group *g, const char *word);
/* 1 / 0, or -1 on error. */
int sl_group_is_identity(const sl_group *g, const char *word);

/* -- towers and elements ------------------------------------------------ */

sl_tower *sl_tower_from_text(const char *text);
sl_tower *sl_tower_from_file(const char *path);
void sl_tower_free(sl_tower *t);
char *sl_tower_describe(const sl_tower *t);

/* Element expression over the tower's generators, e.g. "2*t + 1". */
sl_elem *sl_tower_parse_elem(const sl_tower *t, const char *expr);
void sl_elem_free(sl_elem *e);
char *sl_elem_str(const sl_elem *e);
sl_elem *sl_elem_add(const sl_elem *a, const sl_elem *b);
sl_elem *sl_elem_sub(const sl_elem *a, const sl_elem *b);
sl_elem *sl_elem_mul(const sl_elem *a, const sl_elem *b);
sl_elem *sl_elem_inverse(const sl_elem *a);
int sl_elem_eq(const sl_elem *a, const sl_elem *b);
int sl_elem_is_zero(const sl_elem *a);
int sl_elem_is_one(const sl_elem *a);

/* -- jobs --------------------------------------------------------------- */

/* Runs one command with options given as alternating key/value strings
 * (without leading dashes), e.g. {"group", "klein.grp", "order", "4"}.
 * Returns the job exit code: 0 pass, 2 counterexample certificate, 1
 * error (also used for malformed calls).  *report_json and *summary are
 * always set when non-NULL pointers are supplied. */
int sl_run_job(const char *command, const char *const *opts, int nopts, char **report_json,
               char **summary);

/* Newline-separated "name: synopsis" lines for every known command. */
char *sl_job_commands(void);

#ifdef __cplusplus
}
#endif

#endif /* SKEWLAB_H */
