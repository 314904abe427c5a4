#include "coble/scanner.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>

#include "coble/errors.hpp"
#include "coble/trivector.hpp"

namespace coble {

int default_scan_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    if (hc == 0) hc = 2;
    return static_cast<int>(std::min(hc, 8u));
}

std::uint64_t projective_space_size(fe q, int m) {
    std::uint64_t s = 0, p = 1;
    for (int i = 0; i < m; ++i) {
        s += p;
        p *= q;
    }
    return s;
}

namespace {

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Third-difference state for one cubic along a line.
struct FdState {
    fe d0, d1, d2, d3;
    void init(const Fp& F, const std::array<fe, 4>& c) {
        // values at t = 0,1,2,3
        fe v0 = c[0];
        fe v1 = F.add(F.add(c[0], c[1]), F.add(c[2], c[3]));
        fe two = F.from_int(2), three = F.from_int(3);
        fe v2 = F.add(c[0], F.mul(two, F.add(c[1], F.mul(two, F.add(c[2], F.mul(two, c[3]))))));
        fe v3 = F.add(c[0], F.mul(three, F.add(c[1], F.mul(three, F.add(c[2], F.mul(three, c[3]))))));
        d0 = v0;
        fe e1 = F.sub(v1, v0), e2 = F.sub(v2, v1), e3 = F.sub(v3, v2);
        d1 = e1;
        fe f2 = F.sub(e2, e1), f3 = F.sub(e3, e2);
        d2 = f2;
        d3 = F.sub(f3, f2);
    }
    void step(const Fp& F) {  // 3 adds
        d0 = F.add(d0, d1);
        d1 = F.add(d1, d2);
        d2 = F.add(d2, d3);
    }
};

struct LineCursor {
    int m;     // number of scan coordinates
    fe q;
    int lead;  // index of the leading 1
    std::vector<fe> x;

    // Position the cursor on the first line of block `lead`.
    void start_block(int l) {
        lead = l;
        std::fill(x.begin(), x.end(), 0);
        x[l] = 1;
    }
    // Advance the free prefix (digits lead+1 .. m-2); false when the block
    // is exhausted.
    bool next_line() {
        for (int d = m - 2; d > lead; --d) {
            if (++x[d] < q) return true;
            x[d] = 0;
        }
        return false;
    }
};

}  // namespace

void projective_scan(const Fp& F, int m, const std::vector<Form>& prefilters, int threads,
                     const std::function<void(int, const std::vector<fe>&)>& on_candidate) {
    fe q = F.q();
    std::vector<CompiledCubic> pre;
    for (const Form& f : prefilters) pre.push_back(CompiledCubic::compile(f));

    // The single point (0,...,0,1) heads the scan order.
    {
        std::vector<fe> x(m, 0);
        x[m - 1] = 1;
        bool pass = true;
        for (const auto& cc : pre)
            if (cc.eval(F, x.data())) {
                pass = false;
                break;
            }
        if (pass) on_candidate(0, x);
    }

    // Lines per block l = m-2 .. 0: q^(m-2-l); lex order is descending l.
    std::vector<std::uint64_t> block_lines;
    std::uint64_t total = 0;
    for (int l = m - 2; l >= 0; --l) {
        std::uint64_t cnt = 1;
        for (int d = 0; d < m - 2 - l; ++d) cnt *= q;
        block_lines.push_back(cnt);
        total += cnt;
    }

    int nworkers = std::max(1, threads);
    std::uint64_t chunk = (total + nworkers - 1) / nworkers;

    auto run_range = [&](int worker, std::uint64_t lo, std::uint64_t hi) {
        LineCursor cur;
        cur.m = m;
        cur.q = q;
        cur.x.assign(m, 0);
        // locate the block and prefix for line index lo
        std::uint64_t skip = lo;
        int bi = 0;
        while (skip >= block_lines[bi]) {
            skip -= block_lines[bi];
            ++bi;
        }
        cur.start_block(m - 2 - bi);
        // decode `skip` as the prefix odometer value (most significant first)
        for (int d = cur.m - 2; d > cur.lead; --d) {
            cur.x[d] = static_cast<fe>(skip % q);
            skip /= q;
        }
        std::vector<FdState> fd(pre.size());
        std::vector<fe> hit(m);
        for (std::uint64_t li = lo; li < hi; ++li) {
            for (std::size_t i = 0; i < pre.size(); ++i)
                fd[i].init(F, pre[i].line_coeffs(F, cur.x.data()));
            for (fe t = 0; t < q; ++t) {
                bool pass = true;
                for (const auto& s : fd)
                    if (s.d0) {
                        pass = false;
                        break;
                    }
                if (pre.empty()) pass = true;
                if (pass) {
                    hit = cur.x;
                    hit[m - 1] = t;
                    on_candidate(worker, hit);
                }
                for (auto& s : fd) s.step(F);
            }
            if (li + 1 < hi && !cur.next_line()) {
                ++bi;
                cur.start_block(m - 2 - bi);
            }
        }
    };

    if (nworkers == 1 || total < 64) {
        run_range(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < nworkers; ++w) {
        std::uint64_t lo = w * chunk, hi = std::min<std::uint64_t>(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(run_range, w, lo, hi);
    }
    for (auto& th : pool) th.join();
}

namespace {

// Two fixed sub-Pfaffian cubics; any point of the rank <= 4 locus kills
// every 6x6 Pfaffian, so filtering on these is sound.
std::vector<Form> surface_prefilters(const PfaffianGeometry& G) {
    const auto& cubics = G.surface_cubics();
    std::vector<Form> pre;
    pre.push_back(cubics[0]);
    pre.push_back(cubics[42]);
    return pre;
}

}  // namespace

ScanReport enumerate_A(const PfaffianGeometry& G, int threads) {
    const Fp& F = G.field();
    if (F.q() > 13) throw FieldTooLarge(F.q(), 13);
    std::int64_t t0 = now_ms();
    int nworkers = std::max(1, threads);
    std::vector<std::vector<std::vector<fe>>> hits(nworkers + 1);
    projective_scan(F, 9, surface_prefilters(G), nworkers,
                    [&](int w, const std::vector<fe>& x) {
                        if (G.on_abelian(x)) hits[w].push_back(x);
                    });
    ScanReport rep;
    rep.q = F.q();
    rep.predicate = "rank<=4";
    for (const auto& part : hits)
        for (const auto& p : part) rep.points.push_back(p);
    rep.count = rep.points.size();
    rep.millis = now_ms() - t0;
    return rep;
}

ScanReport curve_points(const PfaffianGeometry& G, const std::vector<fe>& P) {
    const Fp& F = G.field();
    if (F.q() > 31) throw FieldTooLarge(F.q(), 31);
    std::int64_t t0 = now_ms();
    Subspace K = G.kernel5(P);  // throws RankTooHigh off the surface
    const Matrix& B = K.basis();
    ScanReport rep;
    rep.q = F.q();
    rep.predicate = "theta-curve";
    projective_scan(F, 5, {}, 1, [&](int, const std::vector<fe>& cc) {
        std::vector<fe> pt = vec_mat(F, cc, B);
        if (G.on_abelian(pt)) rep.points.push_back(normalize_point(F, pt));
    });
    rep.count = rep.points.size();
    rep.millis = now_ms() - t0;
    return rep;
}

ScanReport hyperplane_section(const PfaffianGeometry& G, const ScanReport& a_points,
                              const std::vector<fe>& v) {
    const Fp& F = G.field();
    if (F.q() > 13) throw FieldTooLarge(F.q(), 13);
    if (is_zero_vec(v)) throw DimensionMismatch("hyperplane_section needs v != 0");
    std::int64_t t0 = now_ms();
    ScanReport rep;
    rep.q = F.q();
    rep.predicate = "A-hyperplane-section";
    for (const auto& p : a_points.points) {
        std::uint64_t acc = 0;
        for (int i = 0; i < 9; ++i) acc += static_cast<std::uint64_t>(p[i]) * v[i];
        if (F.reduce(acc) == 0) rep.points.push_back(p);
    }
    rep.count = rep.points.size();
    rep.millis = now_ms() - t0;
    return rep;
}

CensusReport rank_census(const PfaffianGeometry& G, int threads) {
    const Fp& F = G.field();
    if (F.q() > 13) throw FieldTooLarge(F.q(), 13);
    std::int64_t t0 = now_ms();
    // rank <= 6 is exactly the vanishing of the cubic, so points off it are
    // the rank-8 stratum and only cubic points need an elimination.
    std::vector<Form> pre = {G.coble_cubic()};
    int nworkers = std::max(1, threads);
    std::vector<std::array<std::uint64_t, 5>> counts(nworkers + 1, {0, 0, 0, 0, 0});
    std::vector<std::uint64_t> seen(nworkers + 1, 0);
    projective_scan(F, 9, pre, nworkers, [&](int w, const std::vector<fe>& x) {
        ++seen[w];
        int r = G.rank_at(x);
        ++counts[w][r / 2];
    });
    CensusReport rep;
    rep.q = F.q();
    std::uint64_t on_cubic = 0;
    for (int w = 0; w <= nworkers; ++w) {
        on_cubic += seen[w];
        for (int i = 0; i < 5; ++i) rep.by_rank[i] += counts[w][i];
    }
    rep.by_rank[4] = projective_space_size(F.q(), 9) - on_cubic;
    rep.millis = now_ms() - t0;
    return rep;
}

std::vector<std::vector<fe>> slice_scan_A(const PfaffianGeometry& G, const Matrix& slice,
                                          int threads) {
    const Fp& F = G.field();
    std::vector<Form> pre;
    for (const Form& f : surface_prefilters(G)) pre.push_back(form_restrict(F, f, slice));
    int nworkers = std::max(1, threads);
    std::vector<std::vector<std::vector<fe>>> hits(nworkers + 1);
    projective_scan(F, slice.rows, pre, nworkers, [&](int w, const std::vector<fe>& c) {
        std::vector<fe> p = vec_mat(F, c, slice);
        if (!is_zero_vec(p) && G.on_abelian(p)) hits[w].push_back(normalize_point(F, p));
    });
    std::vector<std::vector<fe>> out;
    for (const auto& part : hits)
        for (const auto& p : part) out.push_back(p);
    return out;
}

std::vector<std::vector<fe>> bootstrap_points(const PfaffianGeometry& G, std::size_t min_count,
                                              Rng& rng, int threads) {
    const Fp& F = G.field();
    if (F.q() <= 13) {
        ScanReport rep = enumerate_A(G, threads);
        return rep.points;
    }
    std::set<std::vector<fe>> pool;
    // Random P^6 slices hit the surface in a handful of points; one seed is
    // enough because its theta curve carries ~q more.
    for (int attempt = 0; attempt < 64 && pool.size() < min_count; ++attempt) {
        Matrix S(7, 9);
        do {
            for (auto& v : S.a) v = rng.residue(F.q());
        } while (rank(F, S) != 7);
        for (auto& p : slice_scan_A(G, S, threads)) pool.insert(p);
        if (pool.empty()) continue;
        std::vector<std::vector<fe>> seeds(pool.begin(), pool.end());
        for (const auto& s : seeds) {
            if (pool.size() >= min_count) break;
            ScanReport curve = curve_points(G, s);
            for (const auto& p : curve.points) pool.insert(p);
        }
    }
    if (pool.size() < min_count)
        throw Error("bootstrap_points: could not collect enough surface points");
    return std::vector<std::vector<fe>>(pool.begin(), pool.end());
}

}  // namespace coble
