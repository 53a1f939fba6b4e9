/* Implementation of the satkit encoding C API.
 *
 * Emission and variable-allocation orders are fixed by the constructions:
 * balanced trees split at the middle (left half rounded up), values are
 * processed ascending, adder buckets are FIFO queues. Identical inputs,
 * ranges, and starting variables therefore produce identical streams.
 */

#include <limits.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "satkit_enc.h"

#define WEIGHT_CAP ((int64_t)1 << 60)

static int64_t max64(int64_t a, int64_t b) { return a > b ? a : b; }
static int64_t min64(int64_t a, int64_t b) { return a < b ? a : b; }

static int bit_length(int64_t x) {
    int n = 0;
    while (x) {
        n++;
        x >>= 1;
    }
    return n;
}

/* ---------------------------------------------------------------- memory */

static void *xcalloc(size_t n, size_t sz) {
    void *p = calloc(n ? n : 1, sz);
    if (!p) {
        fprintf(stderr, "satkit_enc: out of memory\n");
        abort();
    }
    return p;
}

static void *xrealloc(void *p, size_t n) {
    void *q = realloc(p, n ? n : 1);
    if (!q) {
        fprintf(stderr, "satkit_enc: out of memory\n");
        abort();
    }
    return q;
}

/* ------------------------------------------------------------- int vecs */

typedef struct {
    int *d;
    size_t len, cap;
} IntVec;

typedef struct {
    int64_t *d;
    size_t len, cap;
} I64Vec;

static void iv_push(IntVec *v, int x) {
    if (v->len == v->cap) {
        v->cap = v->cap ? v->cap * 2 : 8;
        v->d = xrealloc(v->d, v->cap * sizeof(int));
    }
    v->d[v->len++] = x;
}

static void iv_free(IntVec *v) {
    free(v->d);
    v->d = NULL;
    v->len = v->cap = 0;
}

static void lv_push(I64Vec *v, int64_t x) {
    if (v->len == v->cap) {
        v->cap = v->cap ? v->cap * 2 : 8;
        v->d = xrealloc(v->d, v->cap * sizeof(int64_t));
    }
    v->d[v->len++] = x;
}

static void lv_free(I64Vec *v) {
    free(v->d);
    v->d = NULL;
    v->len = v->cap = 0;
}

typedef struct {
    int64_t lo, hi;
} Range;

typedef struct {
    Range *d;
    size_t len, cap;
} RangeVec;

static void rv_push(RangeVec *v, int64_t lo, int64_t hi) {
    if (v->len == v->cap) {
        v->cap = v->cap ? v->cap * 2 : 4;
        v->d = xrealloc(v->d, v->cap * sizeof(Range));
    }
    v->d[v->len].lo = lo;
    v->d[v->len].hi = hi;
    v->len++;
}

static int rv_covers(const RangeVec *v, int64_t k) {
    for (size_t i = 0; i < v->len; i++)
        if (v->d[i].lo <= k && k <= v->d[i].hi)
            return 1;
    return 0;
}

/* --------------------------------------------------------- counting tree */

typedef struct TotNode {
    struct TotNode *left, *right;
    int lit;    /* leaf literal; 0 marks an internal node */
    int64_t n;  /* inputs under this node */
    int *outputs;         /* [1..n]: value -> variable id, 0 = unallocated */
    unsigned char *done;  /* [1..n]: bit 0 = ub emitted, bit 1 = lb emitted */
} TotNode;

static TotNode *tot_new_leaf(int lit) {
    TotNode *nd = xcalloc(1, sizeof(TotNode));
    nd->lit = lit;
    nd->n = 1;
    return nd;
}

static TotNode *tot_new_node(TotNode *left, TotNode *right) {
    TotNode *nd = xcalloc(1, sizeof(TotNode));
    nd->left = left;
    nd->right = right;
    nd->n = left->n + right->n;
    nd->outputs = xcalloc((size_t)nd->n + 1, sizeof(int));
    nd->done = xcalloc((size_t)nd->n + 1, 1);
    return nd;
}

static TotNode *tot_build(const int *lits, int64_t n) {
    if (n == 1)
        return tot_new_leaf(lits[0]);
    int64_t mid = (n + 1) / 2;
    return tot_new_node(tot_build(lits, mid), tot_build(lits + mid, n - mid));
}

static void tot_free(TotNode *nd) {
    if (!nd)
        return;
    tot_free(nd->left);
    tot_free(nd->right);
    free(nd->outputs);
    free(nd->done);
    free(nd);
}

static int tot_output(const TotNode *nd, int64_t v) {
    return nd->lit ? nd->lit : nd->outputs[v];
}

/* ---------------------------------------------------------- weighted tree */

typedef struct GteNode {
    struct GteNode *left, *right;
    int lit; /* leaf literal; 0 marks an internal node */
    int64_t weight;
    I64Vec out_vals;
    IntVec out_vars;
    I64Vec em_u, em_v, em_t; /* emitted pairs with their targets */
} GteNode;

static GteNode *gte_new_leaf(int lit, int64_t weight) {
    GteNode *nd = xcalloc(1, sizeof(GteNode));
    nd->lit = lit;
    nd->weight = weight;
    return nd;
}

static GteNode *gte_build(const int *lits, const int64_t *wts, int64_t n) {
    if (n == 1)
        return gte_new_leaf(lits[0], wts[0]);
    int64_t mid = (n + 1) / 2;
    GteNode *nd = xcalloc(1, sizeof(GteNode));
    nd->left = gte_build(lits, wts, mid);
    nd->right = gte_build(lits + mid, wts + mid, n - mid);
    return nd;
}

static void gte_free(GteNode *nd) {
    if (!nd)
        return;
    gte_free(nd->left);
    gte_free(nd->right);
    lv_free(&nd->out_vals);
    iv_free(&nd->out_vars);
    lv_free(&nd->em_u);
    lv_free(&nd->em_v);
    lv_free(&nd->em_t);
    free(nd);
}

static int cmp_i64(const void *a, const void *b) {
    int64_t x = *(const int64_t *)a, y = *(const int64_t *)b;
    return x < y ? -1 : x > y ? 1 : 0;
}

/* collapsed reachable subtree sums, ascending and deduplicated */
static void gte_values(const GteNode *nd, int64_t cap, I64Vec *out) {
    out->len = 0;
    if (nd->lit) {
        lv_push(out, min64(nd->weight, cap));
        return;
    }
    I64Vec left = {0}, right = {0};
    gte_values(nd->left, cap, &left);
    gte_values(nd->right, cap, &right);
    for (size_t i = 0; i <= left.len; i++) {
        int64_t u = i == 0 ? 0 : left.d[i - 1];
        for (size_t j = 0; j <= right.len; j++) {
            int64_t v = j == 0 ? 0 : right.d[j - 1];
            if (i == 0 && j == 0)
                continue;
            int64_t t = u + v;
            if (t >= cap) {
                lv_push(out, cap);
                break;
            }
            lv_push(out, t);
        }
    }
    lv_free(&left);
    lv_free(&right);
    if (out->len) {
        qsort(out->d, out->len, sizeof(int64_t), cmp_i64);
        size_t w = 0;
        for (size_t i = 0; i < out->len; i++)
            if (w == 0 || out->d[i] != out->d[w - 1])
                out->d[w++] = out->d[i];
        out->len = w;
    }
}

static int gte_output(const GteNode *nd, int64_t v) {
    if (nd->lit)
        return nd->lit;
    for (size_t i = 0; i < nd->out_vals.len; i++)
        if (nd->out_vals.d[i] == v)
            return nd->out_vars.d[i];
    return 0;
}

/* -------------------------------------------------------------- handle */

typedef struct {
    IntVec lits;
    size_t head; /* FIFO start */
} Bucket;

typedef struct {
    TotNode *root;
    int64_t n;
} TotSub;

struct SkEncoder {
    int kind;
    int busy;
    char err[192];

    int next_var;
    int max_input_var;
    IntVec in_lits;
    I64Vec in_wts;
    int64_t total;

    /* emission context, valid while an encode call runs */
    sk_clause_cb ccb;
    void *cdata;

    /* totalizer */
    TotNode *tot_root;
    size_t tot_grafted; /* inputs already in the tree */
    RangeVec tot_ub, tot_lb;
    int tot_false_lit;

    /* generalized totalizer */
    GteNode *gte_root;
    size_t gte_grafted;
    RangeVec gte_ub;

    /* adder */
    Bucket *buckets;
    size_t n_buckets, cap_buckets;
    IntVec sum_bits; /* 0 entries mark constant-zero bits */
    int add_dirty;
    I64Vec add_ub_k, add_lb_k;
    IntVec add_ub_a, add_lb_a;
    RangeVec add_ub, add_lb;
    int add_false_lit;

    /* dynamic poly watchdog */
    int dpw_built;
    int dpw_power;
    IntVec dpw_tares;
    TotSub *dpw_tots;
    size_t dpw_ntots;
    RangeVec dpw_ub;

    /* at-most-one */
    int am1_done;
};

static int sk_fail(SkEncoder *e, int status, const char *msg) {
    snprintf(e->err, sizeof(e->err), "%s", msg);
    return status;
}

static int sk_fresh(SkEncoder *e) { return e->next_var++; }

static void emit(SkEncoder *e, int lit) { e->ccb(lit, e->cdata); }

/* ----------------------------------------------------- totalizer requests */

/* Define node outputs for values vlo, vlo+step, ..., vhi (children always
 * contiguously); dir 0 = upper bound, 1 = lower bound. */
static void tot_request(SkEncoder *e, TotNode *nd, int64_t vlo, int64_t vhi,
                        int64_t step, int dir) {
    if (!nd || nd->lit || vlo > vhi)
        return;
    int64_t a = nd->left->n, b = nd->right->n;
    tot_request(e, nd->left, max64(1, vlo - b), min64(a, vhi), 1, dir);
    tot_request(e, nd->right, max64(1, vlo - a), min64(b, vhi), 1, dir);
    unsigned char mask = dir ? 2 : 1;
    for (int64_t v = vlo; v <= vhi; v += step) {
        if (nd->done[v] & mask)
            continue;
        nd->done[v] |= mask;
        if (!nd->outputs[v])
            nd->outputs[v] = sk_fresh(e);
        int o = nd->outputs[v];
        if (dir == 0) {
            for (int64_t i = max64(0, v - b); i <= min64(a, v); i++) {
                int64_t j = v - i;
                if (i)
                    emit(e, -tot_output(nd->left, i));
                if (j)
                    emit(e, -tot_output(nd->right, j));
                emit(e, o);
                emit(e, 0);
            }
        } else {
            for (int64_t i = max64(0, v - 1 - b); i <= min64(a, v - 1); i++) {
                int64_t j = v - 1 - i;
                if (i < a)
                    emit(e, tot_output(nd->left, i + 1));
                if (j < b)
                    emit(e, tot_output(nd->right, j + 1));
                emit(e, -o);
                emit(e, 0);
            }
        }
    }
}

static void tot_graft(SkEncoder *e) {
    size_t pending = e->in_lits.len - e->tot_grafted;
    if (!pending)
        return;
    TotNode *sub = tot_build(e->in_lits.d + e->tot_grafted, (int64_t)pending);
    e->tot_root = e->tot_root ? tot_new_node(e->tot_root, sub) : sub;
    e->tot_grafted = e->in_lits.len;
}

static int tot_encode(SkEncoder *e, int64_t lo, int64_t hi, int dir) {
    tot_graft(e);
    int64_t n = e->tot_root ? e->tot_root->n : 0;
    if (dir == 0) {
        tot_request(e, e->tot_root, lo + 1, min64(n, hi + 1), 1, 0);
        rv_push(&e->tot_ub, lo, hi);
    } else {
        tot_request(e, e->tot_root, max64(1, lo), min64(n, hi), 1, 1);
        if (hi > n && !e->tot_false_lit) {
            e->tot_false_lit = sk_fresh(e);
            emit(e, -e->tot_false_lit);
            emit(e, 0);
        }
        rv_push(&e->tot_lb, lo, hi);
    }
    return SK_OK;
}

static int tot_enforce(SkEncoder *e, int64_t k, int dir, sk_assump_cb cb,
                       void *data) {
    int64_t n = e->tot_root ? e->tot_root->n : 0;
    size_t ungrafted = e->in_lits.len - e->tot_grafted;
    if (dir == 0) {
        if (k >= n + (int64_t)ungrafted)
            return SK_OK;
        if (ungrafted || !rv_covers(&e->tot_ub, k))
            return sk_fail(e, SK_ERR_NOT_ENCODED, "upper bound not encoded");
        cb(-tot_output(e->tot_root, k + 1), data);
        return SK_OK;
    }
    if (k <= 0)
        return SK_OK;
    if (ungrafted || !rv_covers(&e->tot_lb, k))
        return sk_fail(e, SK_ERR_NOT_ENCODED, "lower bound not encoded");
    if (k > n)
        cb(e->tot_false_lit, data);
    else
        cb(tot_output(e->tot_root, k), data);
    return SK_OK;
}

/* ------------------------------------------------ generalized totalizer */

static void gte_request(SkEncoder *e, GteNode *nd, int64_t vlo, int64_t cap) {
    if (nd->lit)
        return;
    I64Vec left = {0}, right = {0};
    gte_values(nd->left, cap, &left);
    gte_values(nd->right, cap, &right);
    int64_t maxl = left.len ? left.d[left.len - 1] : 0;
    int64_t maxr = right.len ? right.d[right.len - 1] : 0;
    gte_request(e, nd->left, max64(1, vlo - maxr), cap);
    gte_request(e, nd->right, max64(1, vlo - maxl), cap);
    for (size_t i = 0; i <= left.len; i++) {
        int64_t u = i == 0 ? 0 : left.d[i - 1];
        for (size_t j = 0; j <= right.len; j++) {
            int64_t v = j == 0 ? 0 : right.d[j - 1];
            if (i == 0 && j == 0)
                continue;
            int64_t t = min64(u + v, cap);
            if (t < vlo)
                continue;
            size_t p = 0;
            int skip = 0;
            for (; p < nd->em_u.len; p++)
                if (nd->em_u.d[p] == u && nd->em_v.d[p] == v) {
                    skip = nd->em_t.d[p] == t;
                    break;
                }
            if (skip)
                continue;
            if (p < nd->em_u.len) {
                nd->em_t.d[p] = t;
            } else {
                lv_push(&nd->em_u, u);
                lv_push(&nd->em_v, v);
                lv_push(&nd->em_t, t);
            }
            int o = gte_output(nd, t);
            if (!o) {
                o = sk_fresh(e);
                lv_push(&nd->out_vals, t);
                iv_push(&nd->out_vars, o);
            }
            if (u)
                emit(e, -gte_output(nd->left, u));
            if (v)
                emit(e, -gte_output(nd->right, v));
            emit(e, o);
            emit(e, 0);
        }
    }
    lv_free(&left);
    lv_free(&right);
}

static void gte_graft(SkEncoder *e) {
    size_t pending = e->in_lits.len - e->gte_grafted;
    if (!pending)
        return;
    GteNode *sub = gte_build(e->in_lits.d + e->gte_grafted,
                             e->in_wts.d + e->gte_grafted, (int64_t)pending);
    if (e->gte_root) {
        GteNode *root = xcalloc(1, sizeof(GteNode));
        root->left = e->gte_root;
        root->right = sub;
        e->gte_root = root;
    } else {
        e->gte_root = sub;
    }
    e->gte_grafted = e->in_lits.len;
}

static int gte_encode(SkEncoder *e, int64_t lo, int64_t hi) {
    gte_graft(e);
    if (e->gte_root && lo < e->total)
        gte_request(e, e->gte_root, lo + 1, hi + 1);
    rv_push(&e->gte_ub, lo, hi);
    return SK_OK;
}

static int gte_enforce(SkEncoder *e, int64_t k, sk_assump_cb cb, void *data) {
    if (k >= e->total)
        return SK_OK;
    size_t ungrafted = e->in_lits.len - e->gte_grafted;
    const Range *rng = NULL;
    for (size_t i = 0; i < e->gte_ub.len; i++)
        if (e->gte_ub.d[i].lo <= k && k <= e->gte_ub.d[i].hi) {
            rng = &e->gte_ub.d[i];
            break;
        }
    if (ungrafted || !rng)
        return sk_fail(e, SK_ERR_NOT_ENCODED, "upper bound not encoded");
    int64_t cap = rng->hi + 1;
    I64Vec vals = {0};
    gte_values(e->gte_root, cap, &vals);
    for (size_t i = 0; i < vals.len; i++)
        if (vals.d[i] > k)
            cb(-gte_output(e->gte_root, vals.d[i]), data);
    lv_free(&vals);
    return SK_OK;
}

/* ----------------------------------------------------------- binary adder */

static Bucket *adder_bucket(SkEncoder *e, size_t i) {
    while (e->n_buckets <= i) {
        if (e->n_buckets == e->cap_buckets) {
            e->cap_buckets = e->cap_buckets ? e->cap_buckets * 2 : 8;
            e->buckets = xrealloc(e->buckets, e->cap_buckets * sizeof(Bucket));
        }
        memset(&e->buckets[e->n_buckets], 0, sizeof(Bucket));
        e->n_buckets++;
    }
    return &e->buckets[i];
}

static size_t bucket_len(const Bucket *b) { return b->lits.len - b->head; }

static int bucket_pop(Bucket *b) { return b->lits.d[b->head++]; }

static void adder_full(SkEncoder *e, int a, int b, int c, int *s, int *t) {
    *s = sk_fresh(e);
    *t = sk_fresh(e);
    int cl[14][4] = {
        {-a, -b, -c, *s}, {a, b, -c, *s}, {a, -b, c, *s}, {-a, b, c, *s},
        {a, b, c, -*s},   {-a, -b, c, -*s}, {-a, b, -c, -*s}, {a, -b, -c, -*s},
        {-a, -b, *t, 0},  {-a, -c, *t, 0},  {-b, -c, *t, 0},
        {a, b, -*t, 0},   {a, c, -*t, 0},   {b, c, -*t, 0}};
    for (int i = 0; i < 14; i++) {
        for (int j = 0; j < 4 && cl[i][j]; j++)
            emit(e, cl[i][j]);
        emit(e, 0);
    }
}

static void adder_half(SkEncoder *e, int a, int b, int *s, int *t) {
    *s = sk_fresh(e);
    *t = sk_fresh(e);
    int cl[7][3] = {{-a, b, *s},  {a, -b, *s}, {-a, -b, -*s}, {a, b, -*s},
                    {-a, -b, *t}, {a, -*t, 0}, {b, -*t, 0}};
    for (int i = 0; i < 7; i++) {
        for (int j = 0; j < 3 && cl[i][j]; j++)
            emit(e, cl[i][j]);
        emit(e, 0);
    }
}

static void adder_settle(SkEncoder *e) {
    if (!e->add_dirty)
        return;
    for (size_t i = 0; i < e->n_buckets; i++) {
        Bucket *bk = &e->buckets[i];
        while (bucket_len(bk) >= 3) {
            int a = bucket_pop(bk), b = bucket_pop(bk), c = bucket_pop(bk);
            int s, t;
            adder_full(e, a, b, c, &s, &t);
            iv_push(&bk->lits, s);
            iv_push(&adder_bucket(e, i + 1)->lits, t);
            bk = &e->buckets[i]; /* adder_bucket may have moved the array */
        }
        if (bucket_len(bk) == 2) {
            int a = bucket_pop(bk), b = bucket_pop(bk);
            int s, t;
            adder_half(e, a, b, &s, &t);
            iv_push(&bk->lits, s);
            iv_push(&adder_bucket(e, i + 1)->lits, t);
        }
    }
    e->sum_bits.len = 0;
    for (size_t i = 0; i < e->n_buckets; i++)
        iv_push(&e->sum_bits,
                bucket_len(&e->buckets[i]) ? e->buckets[i].lits.d[e->buckets[i].head]
                                           : 0);
    e->add_dirty = 0;
}

static int adder_assump_for(const I64Vec *ks, const IntVec *as, int64_t k) {
    for (size_t i = 0; i < ks->len; i++)
        if (ks->d[i] == k)
            return as->d[i];
    return 0;
}

static void adder_comparator_ub(SkEncoder *e, int64_t k) {
    if (adder_assump_for(&e->add_ub_k, &e->add_ub_a, k))
        return;
    int a = sk_fresh(e);
    lv_push(&e->add_ub_k, k);
    iv_push(&e->add_ub_a, a);
    size_t m = e->sum_bits.len;
    for (size_t i = 0; i < m; i++) {
        if ((k >> i) & 1 || !e->sum_bits.d[i])
            continue;
        IntVec cl = {0};
        iv_push(&cl, -a);
        iv_push(&cl, -e->sum_bits.d[i]);
        int satisfied = 0;
        for (size_t j = i + 1; j < m; j++) {
            if (!((k >> j) & 1))
                continue;
            if (!e->sum_bits.d[j]) {
                satisfied = 1; /* that bit of the sum is constant zero */
                break;
            }
            iv_push(&cl, -e->sum_bits.d[j]);
        }
        if (!satisfied) {
            for (size_t j = 0; j < cl.len; j++)
                emit(e, cl.d[j]);
            emit(e, 0);
        }
        iv_free(&cl);
    }
}

static void adder_comparator_lb(SkEncoder *e, int64_t k) {
    if (adder_assump_for(&e->add_lb_k, &e->add_lb_a, k))
        return;
    int a = sk_fresh(e);
    lv_push(&e->add_lb_k, k);
    iv_push(&e->add_lb_a, a);
    size_t m = e->sum_bits.len;
    for (size_t i = 0; i < m; i++) {
        if (!((k >> i) & 1))
            continue;
        emit(e, -a);
        if (e->sum_bits.d[i])
            emit(e, e->sum_bits.d[i]);
        for (size_t j = i + 1; j < m; j++) {
            if ((k >> j) & 1)
                continue;
            if (e->sum_bits.d[j])
                emit(e, e->sum_bits.d[j]);
        }
        emit(e, 0);
    }
}

static int adder_encode(SkEncoder *e, int64_t lo, int64_t hi, int dir) {
    adder_settle(e);
    if (dir == 0) {
        for (int64_t k = lo; k <= min64(hi, e->total - 1); k++)
            adder_comparator_ub(e, k);
        rv_push(&e->add_ub, lo, hi);
    } else {
        for (int64_t k = max64(lo, 1); k <= min64(hi, e->total); k++)
            adder_comparator_lb(e, k);
        if (hi > e->total && !e->add_false_lit) {
            e->add_false_lit = sk_fresh(e);
            emit(e, -e->add_false_lit);
            emit(e, 0);
        }
        rv_push(&e->add_lb, lo, hi);
    }
    return SK_OK;
}

static int adder_enforce(SkEncoder *e, int64_t k, int dir, sk_assump_cb cb,
                         void *data) {
    if (dir == 0) {
        if (k >= e->total)
            return SK_OK;
        if (e->add_dirty || !rv_covers(&e->add_ub, k))
            return sk_fail(e, SK_ERR_NOT_ENCODED, "upper bound not encoded");
        cb(adder_assump_for(&e->add_ub_k, &e->add_ub_a, k), data);
        return SK_OK;
    }
    if (k <= 0)
        return SK_OK;
    if (e->add_dirty || !rv_covers(&e->add_lb, k))
        return sk_fail(e, SK_ERR_NOT_ENCODED, "lower bound not encoded");
    if (k > e->total)
        cb(e->add_false_lit, data);
    else
        cb(adder_assump_for(&e->add_lb_k, &e->add_lb_a, k), data);
    return SK_OK;
}

/* ------------------------------------------------------------- watchdog */

static void dpw_build(SkEncoder *e) {
    int64_t maxw = 0;
    for (size_t i = 0; i < e->in_wts.len; i++)
        maxw = max64(maxw, e->in_wts.d[i]);
    int p = bit_length(maxw) - 1;
    e->dpw_power = p;
    IntVec *bk = xcalloc((size_t)p + 1, sizeof(IntVec));
    for (size_t i = 0; i < e->in_lits.len; i++) {
        int64_t w = e->in_wts.d[i];
        for (int bit = 0; bit < bit_length(w); bit++)
            if ((w >> bit) & 1)
                iv_push(&bk[bit], e->in_lits.d[i]);
    }
    for (int i = 0; i < p; i++)
        iv_push(&e->dpw_tares, sk_fresh(e));
    e->dpw_tots = xcalloc((size_t)p + 1, sizeof(TotSub));
    e->dpw_ntots = (size_t)p + 1;
    TotSub *prev = NULL;
    for (int i = 0; i <= p; i++) {
        IntVec inputs = {0};
        for (size_t j = 0; j < bk[i].len; j++)
            iv_push(&inputs, bk[i].d[j]);
        if (i < p)
            iv_push(&inputs, e->dpw_tares.d[i]);
        if (prev) {
            /* every second output of the lower totalizer carries upward */
            for (int64_t v = 2; v <= prev->n; v += 2)
                iv_push(&inputs, tot_output(prev->root, v));
        }
        TotSub *sub = &e->dpw_tots[i];
        sub->root = tot_build(inputs.d, (int64_t)inputs.len);
        sub->n = (int64_t)inputs.len;
        if (i < p)
            tot_request(e, sub->root, 2, sub->n - (sub->n & 1), 2, 0);
        iv_free(&inputs);
        prev = sub;
    }
    for (int i = 0; i <= p; i++)
        iv_free(&bk[i]);
    free(bk);
    e->dpw_built = 1;
}

static int dpw_encode(SkEncoder *e, int64_t lo, int64_t hi) {
    if (e->in_lits.len) {
        if (!e->dpw_built)
            dpw_build(e);
        int64_t hi_eff = min64(hi, e->total - 1);
        if (lo <= hi_eff) {
            TotSub *top = &e->dpw_tots[e->dpw_ntots - 1];
            int64_t m_lo = (lo >> e->dpw_power) + 1;
            int64_t m_hi = min64((hi_eff >> e->dpw_power) + 1, top->n);
            if (m_lo <= m_hi)
                tot_request(e, top->root, m_lo, m_hi, 1, 0);
        }
    }
    rv_push(&e->dpw_ub, lo, hi);
    return SK_OK;
}

static int dpw_enforce(SkEncoder *e, int64_t k, sk_assump_cb cb, void *data) {
    if (k >= e->total)
        return SK_OK;
    if (!rv_covers(&e->dpw_ub, k))
        return sk_fail(e, SK_ERR_NOT_ENCODED, "upper bound not encoded");
    int p = e->dpw_power;
    int64_t tare = p ? ((((int64_t)1 << p) - ((k + 1) & (((int64_t)1 << p) - 1)))
                       & (((int64_t)1 << p) - 1))
                     : 0;
    for (int i = 0; i < p; i++)
        cb((tare >> i) & 1 ? e->dpw_tares.d[i] : -e->dpw_tares.d[i], data);
    TotSub *top = &e->dpw_tots[e->dpw_ntots - 1];
    int64_t m = (k + 1 + tare) >> p;
    if (m <= top->n)
        cb(-tot_output(top->root, m), data);
    return SK_OK;
}

/* ------------------------------------------------------------ at-most-one */

static void am1_pairwise_level(SkEncoder *e, const int *lits, size_t n) {
    for (size_t i = 0; i < n; i++)
        for (size_t j = i + 1; j < n; j++) {
            emit(e, -lits[i]);
            emit(e, -lits[j]);
            emit(e, 0);
        }
}

static void am1_commander_level(SkEncoder *e, const int *lits, size_t n) {
    if (n <= 1)
        return;
    if (n <= 4) {
        am1_pairwise_level(e, lits, n);
        return;
    }
    IntVec commanders = {0};
    for (size_t g = 0; g < n; g += 4) {
        size_t sz = n - g < 4 ? n - g : 4;
        if (sz == 1) {
            iv_push(&commanders, lits[g]);
            continue;
        }
        int c = sk_fresh(e);
        am1_pairwise_level(e, lits + g, sz);
        for (size_t i = 0; i < sz; i++) {
            emit(e, -lits[g + i]);
            emit(e, c);
            emit(e, 0);
        }
        iv_push(&commanders, c);
    }
    am1_commander_level(e, commanders.d, commanders.len);
    iv_free(&commanders);
}

static int am1_encode(SkEncoder *e) {
    const int *lits = e->in_lits.d;
    size_t n = e->in_lits.len;
    e->am1_done = 1;
    if (n <= 1)
        return SK_OK;
    switch (e->kind) {
    case SK_ENC_AM1_PAIRWISE:
        am1_pairwise_level(e, lits, n);
        break;
    case SK_ENC_AM1_LADDER: {
        IntVec prefix = {0};
        for (size_t i = 0; i + 1 < n; i++)
            iv_push(&prefix, sk_fresh(e));
        for (size_t i = 1; i <= n; i++) {
            int x = lits[i - 1];
            if (i <= n - 1) {
                emit(e, -x);
                emit(e, prefix.d[i - 1]);
                emit(e, 0);
            }
            if (2 <= i && i <= n - 1) {
                emit(e, -prefix.d[i - 2]);
                emit(e, prefix.d[i - 1]);
                emit(e, 0);
            }
            if (i >= 2) {
                emit(e, -x);
                emit(e, -prefix.d[i - 2]);
                emit(e, 0);
            }
        }
        iv_free(&prefix);
        break;
    }
    case SK_ENC_AM1_BITWISE: {
        int n_bits = bit_length((int64_t)n - 1);
        IntVec bits = {0};
        for (int j = 0; j < n_bits; j++)
            iv_push(&bits, sk_fresh(e));
        for (size_t idx = 0; idx < n; idx++)
            for (int j = 0; j < n_bits; j++) {
                emit(e, -lits[idx]);
                emit(e, (idx >> j) & 1 ? bits.d[j] : -bits.d[j]);
                emit(e, 0);
            }
        iv_free(&bits);
        break;
    }
    case SK_ENC_AM1_COMMANDER:
        am1_commander_level(e, lits, n);
        break;
    case SK_ENC_AM1_BIMANDER: {
        size_t m = (n + 1) / 2;
        int n_bits = m > 1 ? bit_length((int64_t)m - 1) : 0;
        IntVec bits = {0};
        for (int j = 0; j < n_bits; j++)
            iv_push(&bits, sk_fresh(e));
        for (size_t g = 0; g * 2 < n; g++) {
            size_t base = g * 2, sz = n - base < 2 ? n - base : 2;
            am1_pairwise_level(e, lits + base, sz);
            for (size_t i = 0; i < sz; i++)
                for (int j = 0; j < n_bits; j++) {
                    emit(e, -lits[base + i]);
                    emit(e, (g >> j) & 1 ? bits.d[j] : -bits.d[j]);
                    emit(e, 0);
                }
        }
        iv_free(&bits);
        break;
    }
    }
    return SK_OK;
}

/* ------------------------------------------------------------ public API */

static int kind_is_pb(int kind) {
    return kind == SK_ENC_GTE || kind == SK_ENC_ADDER || kind == SK_ENC_DPW;
}

static int kind_is_am1(int kind) {
    return kind >= SK_ENC_AM1_PAIRWISE && kind <= SK_ENC_AM1_BIMANDER;
}

SkEncoder *sk_encoder_new(int kind) {
    if (kind < SK_ENC_TOTALIZER || kind > SK_ENC_AM1_BIMANDER)
        return NULL;
    SkEncoder *e = calloc(1, sizeof(SkEncoder));
    if (!e)
        return NULL;
    e->kind = kind;
    e->next_var = 1;
    return e;
}

void sk_encoder_drop(SkEncoder *e) {
    if (!e)
        return;
    iv_free(&e->in_lits);
    lv_free(&e->in_wts);
    tot_free(e->tot_root);
    free(e->tot_ub.d);
    free(e->tot_lb.d);
    gte_free(e->gte_root);
    free(e->gte_ub.d);
    for (size_t i = 0; i < e->n_buckets; i++)
        iv_free(&e->buckets[i].lits);
    free(e->buckets);
    iv_free(&e->sum_bits);
    lv_free(&e->add_ub_k);
    lv_free(&e->add_lb_k);
    iv_free(&e->add_ub_a);
    iv_free(&e->add_lb_a);
    free(e->add_ub.d);
    free(e->add_lb.d);
    iv_free(&e->dpw_tares);
    for (size_t i = 0; i < e->dpw_ntots; i++)
        tot_free(e->dpw_tots[i].root);
    free(e->dpw_tots);
    free(e->dpw_ub.d);
    free(e);
}

const char *sk_encoder_last_error(const SkEncoder *e) {
    return e ? e->err : "null handle";
}

int sk_encoder_add_input(SkEncoder *e, int lit, uint64_t weight) {
    if (!e)
        return SK_ERR_INVALID;
    if (e->busy)
        return sk_fail(e, SK_ERR_REENTRANT, "callback re-entered the handle");
    if (lit == 0)
        return sk_fail(e, SK_ERR_INVALID, "0 is not a valid literal");
    if (kind_is_pb(e->kind)) {
        if (weight == 0)
            return sk_fail(e, SK_ERR_INVALID, "weight must be >= 1");
        if (weight >= (uint64_t)WEIGHT_CAP ||
            e->total > WEIGHT_CAP - (int64_t)weight)
            return sk_fail(e, SK_ERR_INVALID, "weight sum too large");
    } else if (weight != 1) {
        return sk_fail(e, SK_ERR_INVALID,
                       "weight must be 1 for counting encoders");
    }
    if (e->kind == SK_ENC_DPW && e->dpw_built)
        return sk_fail(e, SK_ERR_UNSUPPORTED,
                       "watchdog structure is frozen after the first encode");
    if (kind_is_am1(e->kind) && e->am1_done)
        return sk_fail(e, SK_ERR_UNSUPPORTED,
                       "at-most-one encodings are one-shot");
    for (size_t i = 0; i < e->in_lits.len; i++)
        if (e->in_lits.d[i] == -lit)
            return sk_fail(e, SK_ERR_INVALID, "complementary input literals");
    int var = lit > 0 ? lit : -lit;
    if (var > e->max_input_var)
        e->max_input_var = var;
    iv_push(&e->in_lits, lit);
    lv_push(&e->in_wts, (int64_t)weight);
    e->total += (int64_t)weight;
    /* new inputs invalidate previously encoded bound ranges */
    if (e->kind == SK_ENC_TOTALIZER) {
        e->tot_ub.len = 0;
        e->tot_lb.len = 0;
    } else if (e->kind == SK_ENC_GTE) {
        e->gte_ub.len = 0;
    } else if (e->kind == SK_ENC_ADDER) {
        size_t bit = 0;
        int64_t w = (int64_t)weight;
        while (w) {
            if (w & 1)
                iv_push(&adder_bucket(e, bit)->lits, lit);
            w >>= 1;
            bit++;
        }
        e->add_dirty = 1;
        e->add_ub_k.len = e->add_lb_k.len = 0;
        e->add_ub_a.len = e->add_lb_a.len = 0;
        e->add_ub.len = e->add_lb.len = 0;
    }
    return SK_OK;
}

static int encode_enter(SkEncoder *e, uint64_t k_lo, uint64_t k_hi,
                        sk_clause_cb cb, int *next_free_var) {
    if (e->busy)
        return sk_fail(e, SK_ERR_REENTRANT, "callback re-entered the handle");
    if (!cb || !next_free_var)
        return sk_fail(e, SK_ERR_INVALID, "null callback or variable counter");
    if (k_lo > k_hi || k_hi >= (uint64_t)WEIGHT_CAP)
        return sk_fail(e, SK_ERR_INVALID, "invalid bound range");
    if (*next_free_var < e->max_input_var + 1)
        return sk_fail(e, SK_ERR_INVALID,
                       "next_free_var must exceed every input variable");
    if (*next_free_var > e->next_var)
        e->next_var = *next_free_var;
    if (e->next_var < e->max_input_var + 1)
        e->next_var = e->max_input_var + 1;
    return SK_OK;
}

int sk_encoder_encode_ub(SkEncoder *e, uint64_t k_lo, uint64_t k_hi,
                         sk_clause_cb cb, void *data, int *next_free_var) {
    if (!e)
        return SK_ERR_INVALID;
    int rc = encode_enter(e, k_lo, k_hi, cb, next_free_var);
    if (rc != SK_OK)
        return rc;
    e->busy = 1;
    e->ccb = cb;
    e->cdata = data;
    switch (e->kind) {
    case SK_ENC_TOTALIZER:
        rc = tot_encode(e, (int64_t)k_lo, (int64_t)k_hi, 0);
        break;
    case SK_ENC_GTE:
        rc = gte_encode(e, (int64_t)k_lo, (int64_t)k_hi);
        break;
    case SK_ENC_ADDER:
        rc = adder_encode(e, (int64_t)k_lo, (int64_t)k_hi, 0);
        break;
    case SK_ENC_DPW:
        rc = dpw_encode(e, (int64_t)k_lo, (int64_t)k_hi);
        break;
    default:
        if (k_lo != 1 || k_hi != 1)
            rc = sk_fail(e, SK_ERR_UNSUPPORTED,
                         "at-most-one encodings fix the bound at 1");
        else if (e->am1_done)
            rc = sk_fail(e, SK_ERR_UNSUPPORTED,
                         "at-most-one encodings are one-shot");
        else
            rc = am1_encode(e);
        break;
    }
    e->busy = 0;
    *next_free_var = e->next_var;
    return rc;
}

int sk_encoder_encode_lb(SkEncoder *e, uint64_t k_lo, uint64_t k_hi,
                         sk_clause_cb cb, void *data, int *next_free_var) {
    if (!e)
        return SK_ERR_INVALID;
    int rc = encode_enter(e, k_lo, k_hi, cb, next_free_var);
    if (rc != SK_OK)
        return rc;
    if (e->kind != SK_ENC_TOTALIZER && e->kind != SK_ENC_ADDER)
        return sk_fail(e, SK_ERR_UNSUPPORTED,
                       "this encoding supports upper bounds only");
    e->busy = 1;
    e->ccb = cb;
    e->cdata = data;
    if (e->kind == SK_ENC_TOTALIZER)
        rc = tot_encode(e, (int64_t)k_lo, (int64_t)k_hi, 1);
    else
        rc = adder_encode(e, (int64_t)k_lo, (int64_t)k_hi, 1);
    e->busy = 0;
    *next_free_var = e->next_var;
    return rc;
}

static int enforce_enter(SkEncoder *e, uint64_t k, sk_assump_cb cb) {
    if (e->busy)
        return sk_fail(e, SK_ERR_REENTRANT, "callback re-entered the handle");
    if (!cb)
        return sk_fail(e, SK_ERR_INVALID, "null callback");
    if (k >= (uint64_t)WEIGHT_CAP)
        return sk_fail(e, SK_ERR_INVALID, "bound too large");
    return SK_OK;
}

int sk_encoder_enforce_ub(SkEncoder *e, uint64_t k, sk_assump_cb cb,
                          void *data) {
    if (!e)
        return SK_ERR_INVALID;
    int rc = enforce_enter(e, k, cb);
    if (rc != SK_OK)
        return rc;
    e->busy = 1;
    switch (e->kind) {
    case SK_ENC_TOTALIZER:
        rc = tot_enforce(e, (int64_t)k, 0, cb, data);
        break;
    case SK_ENC_GTE:
        rc = gte_enforce(e, (int64_t)k, cb, data);
        break;
    case SK_ENC_ADDER:
        rc = adder_enforce(e, (int64_t)k, 0, cb, data);
        break;
    case SK_ENC_DPW:
        rc = dpw_enforce(e, (int64_t)k, cb, data);
        break;
    default:
        if (k == 0 || !e->am1_done)
            rc = sk_fail(e, SK_ERR_NOT_ENCODED,
                         "at-most-one enforces exactly bound 1 once encoded");
        else
            rc = SK_OK; /* the encoding asserts the bound; no assumptions */
        break;
    }
    e->busy = 0;
    return rc;
}

int sk_encoder_enforce_lb(SkEncoder *e, uint64_t k, sk_assump_cb cb,
                          void *data) {
    if (!e)
        return SK_ERR_INVALID;
    int rc = enforce_enter(e, k, cb);
    if (rc != SK_OK)
        return rc;
    if (e->kind != SK_ENC_TOTALIZER && e->kind != SK_ENC_ADDER)
        return sk_fail(e, SK_ERR_UNSUPPORTED,
                       "this encoding supports upper bounds only");
    e->busy = 1;
    if (e->kind == SK_ENC_TOTALIZER)
        rc = tot_enforce(e, (int64_t)k, 1, cb, data);
    else
        rc = adder_enforce(e, (int64_t)k, 1, cb, data);
    e->busy = 0;
    return rc;
}
