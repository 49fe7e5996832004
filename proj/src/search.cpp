#include "altsigma/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "altsigma/multfunc.hpp"

namespace altsigma {

namespace {

using json = nlohmann::json;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int resolve_threads(int requested) {
    if (requested > 0) return std::min(requested, 64);
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (int)std::min<unsigned>(hw, 64);
}

// Merges per-chunk hit lists in chunk order so output is independent of the
// worker count, and persists the contiguous prefix periodically.
class Frontier {
  public:
    Frontier(SearchReport& rep, uint64_t start, const ScanOptions& opt, uint64_t hi)
        : rep_(rep), start_(start), opt_(opt), hi_(hi) {}

    void complete(uint64_t chunk, std::vector<uint64_t> hits, std::string note) {
        std::lock_guard<std::mutex> lock(mu_);
        done_.emplace(chunk, std::move(hits));
        if (!note.empty()) rep_.note += note;
        while (true) {
            auto it = done_.find(merged_);
            if (it == done_.end()) break;
            rep_.hits.insert(rep_.hits.end(), it->second.begin(), it->second.end());
            done_.erase(it);
            ++merged_;
            if (!opt_.checkpoint_path.empty() && opt_.checkpoint_interval > 0 &&
                merged_ % opt_.checkpoint_interval == 0) {
                save_checkpoint(opt_.checkpoint_path, snapshot());
            }
        }
    }

  private:
    Checkpoint snapshot() const {
        Checkpoint cp;
        cp.kind = rep_.kind;
        cp.m = rep_.m;
        cp.k = rep_.k;
        cp.lo = rep_.lo;
        cp.high_water = std::min(hi_, start_ + merged_ * opt_.block - 1);
        cp.hits = rep_.hits;
        return cp;
    }

    std::mutex mu_;
    SearchReport& rep_;
    uint64_t start_;
    const ScanOptions& opt_;
    uint64_t hi_;
    std::map<uint64_t, std::vector<uint64_t>> done_;
    uint64_t merged_ = 0;
};

void run_chunked(uint64_t start, uint64_t hi, const ScanOptions& opt, SearchReport& rep,
                 const std::function<void(uint64_t, uint64_t, std::vector<uint64_t>&,
                                          std::string&)>& scan_chunk) {
    uint64_t block = std::max<uint64_t>(opt.block, 1024);
    ScanOptions effective = opt;
    effective.block = block;
    uint64_t nchunks = (hi - start) / block + 1;
    Frontier frontier(rep, start, effective, hi);
    std::atomic<uint64_t> next{0};

    auto worker = [&] {
        for (;;) {
            uint64_t c = next.fetch_add(1);
            if (c >= nchunks) break;
            uint64_t a = start + c * block;
            uint64_t b = std::min(hi, a + block - 1);
            std::vector<uint64_t> hits;
            std::string note;
            scan_chunk(a, b, hits, note);
            frontier.complete(c, std::move(hits), std::move(note));
        }
    };

    int nthreads = std::min<uint64_t>(resolve_threads(opt.threads), nchunks);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
}

void verify_hits_from_scratch(const SearchReport& rep, int m, uint64_t k) {
    uint64_t prev = 0;
    for (uint64_t n : rep.hits) {
        if (n <= prev && prev != 0)
            throw std::logic_error("search produced a non-ascending hit list");
        prev = n;
        if (checked_mul(i128(k), iterate_beta(i128(n), m, nullptr)) != i128(n))
            throw std::logic_error("hit " + to_string(i128(n)) + " failed re-verification");
    }
}

bool is_prime_by_division(uint64_t n) {
    Factorization f = factorize(i128(n));
    return f.factors.size() == 1 && f.factors[0].exp == 1;
}

}  // namespace

i128 iterate_beta(i128 n, int m, const PrimeSieve* sieve) {
    if (n < 1) throw std::invalid_argument("iterate_beta: n must be >= 1");
    if (m < 1) throw std::invalid_argument("iterate_beta: m must be >= 1");
    i128 v = n;
    for (int i = 0; i < m; ++i) v = beta(factorize(v, sieve));
    return v;
}

SearchReport find_mk_imperfect(const ImperfectQuery& q, const ScanOptions& opt) {
    if (q.m < 1) throw std::invalid_argument("find_mk_imperfect: m must be >= 1");
    if (q.k < 2) throw std::invalid_argument("find_mk_imperfect: k must be >= 2");
    if (q.lo < 1 || q.hi < q.lo)
        throw std::invalid_argument("find_mk_imperfect: need 1 <= lo <= hi");

    auto t0 = clock_type::now();
    SearchReport rep;
    rep.kind = "imperfect";
    rep.m = q.m;
    rep.k = q.k;
    rep.lo = q.lo;
    rep.hi = q.hi;
    rep.checkpoint_path = opt.checkpoint_path;

    uint64_t start = q.lo;
    if (!opt.checkpoint_path.empty()) {
        if (auto cp = load_checkpoint(opt.checkpoint_path)) {
            if (cp->kind != rep.kind || cp->m != q.m || cp->k != q.k || cp->lo != q.lo) {
                throw std::invalid_argument(
                    "checkpoint at " + opt.checkpoint_path +
                    " records a different query; refusing to resume");
            }
            if (cp->high_water > q.hi) {
                throw std::invalid_argument(
                    "checkpoint high_water " + std::to_string(cp->high_water) +
                    " exceeds requested hi " + std::to_string(q.hi));
            }
            rep.hits = cp->hits;
            start = cp->high_water + 1;
        }
    }

    if (start <= q.hi) {
        if (q.m == 1) {
            BlockEvaluator ev({Fn::beta}, std::max<uint64_t>(q.hi, 2));
            run_chunked(start, q.hi, opt, rep,
                        [&](uint64_t a, uint64_t b, std::vector<uint64_t>& hits,
                            std::string&) {
                            std::vector<int64_t> buf(b - a + 1);
                            ev.eval(a, std::span<int64_t>(buf.data(), buf.size()));
                            for (uint64_t n = a; n <= b; ++n) {
                                if (i128(q.k) * i128(buf[n - a]) == i128(n))
                                    hits.push_back(n);
                            }
                        });
        } else {
            PrimeSieve sieve(std::max<uint64_t>(q.hi, 2));
            run_chunked(start, q.hi, opt, rep,
                        [&](uint64_t a, uint64_t b, std::vector<uint64_t>& hits,
                            std::string& note) {
                            uint64_t n0 = ((a + q.k - 1) / q.k) * q.k;
                            for (uint64_t n = n0; n <= b;) {
                                try {
                                    if (checked_mul(i128(q.k),
                                                    iterate_beta(i128(n), q.m, &sieve)) ==
                                        i128(n))
                                        hits.push_back(n);
                                } catch (const overflow_error& e) {
                                    note += "skipped n=" + std::to_string(n) + ": " +
                                            e.what() + "; ";
                                }
                                if (b - n < q.k) break;
                                n += q.k;
                            }
                        });
        }
    }

    rep.high_water = q.hi;
    verify_hits_from_scratch(rep, q.m, q.k);
    if (!opt.checkpoint_path.empty()) {
        Checkpoint cp;
        cp.kind = rep.kind;
        cp.m = rep.m;
        cp.k = rep.k;
        cp.lo = rep.lo;
        cp.high_water = rep.high_water;
        cp.hits = rep.hits;
        save_checkpoint(opt.checkpoint_path, cp);
    }
    rep.elapsed_sec = seconds_since(t0);
    return rep;
}

SearchReport find_beta_equal_consecutive(uint64_t hi) {
    if (hi < 1) throw std::invalid_argument("find_beta_equal_consecutive: hi must be >= 1");
    auto t0 = clock_type::now();
    SearchReport rep;
    rep.kind = "consecutive";
    rep.lo = 1;
    rep.hi = hi;

    BlockEvaluator ev({Fn::beta}, hi + 1);
    const uint64_t window = uint64_t{1} << 20;
    std::vector<int64_t> buf(std::min(window, hi + 1));
    int64_t prev = 0;  // beta(base - 1), unused at base = 1
    for (uint64_t base = 1; base <= hi + 1;) {
        uint64_t width = std::min<uint64_t>(buf.size(), hi + 2 - base);
        ev.eval(base, std::span<int64_t>(buf.data(), width));
        for (uint64_t i = 0; i < width; ++i) {
            uint64_t n = base + i;
            if (n >= 2 && prev == buf[i] && n - 1 <= hi) rep.hits.push_back(n - 1);
            prev = buf[i];
        }
        base += width;
    }
    rep.high_water = hi;

    for (uint64_t n : rep.hits) {
        if (beta(factorize(i128(n))) != beta(factorize(i128(n) + 1)))
            throw std::logic_error("hit " + std::to_string(n) + " failed re-verification");
    }
    rep.elapsed_sec = seconds_since(t0);
    return rep;
}

SearchReport lehmer_analog_scan(uint64_t hi) {
    if (hi < 1) throw std::invalid_argument("lehmer_analog_scan: hi must be >= 1");
    auto t0 = clock_type::now();
    SearchReport rep;
    rep.kind = "lehmer";
    rep.lo = 1;
    rep.hi = hi;
    rep.high_water = hi;

    if (hi >= 4) {
        rep.note =
            "n = 4 is composite with beta(4) = 3 dividing n - 1 = 3; "
            "excluded from the hit list by convention. ";
    }

    BlockEvaluator ev({Fn::beta}, std::max<uint64_t>(hi, 2));
    const uint64_t window = uint64_t{1} << 20;
    std::vector<int64_t> buf(std::min(window, hi));
    for (uint64_t base = 2; base <= hi;) {
        uint64_t width = std::min<uint64_t>(buf.size(), hi - base + 1);
        ev.eval(base, std::span<int64_t>(buf.data(), width));
        for (uint64_t i = 0; i < width; ++i) {
            uint64_t n = base + i;
            if ((n - 1) % (uint64_t)buf[i] != 0) continue;  // primes always pass here
            if (n == 4 || is_prime_by_division(n)) continue;
            rep.hits.push_back(n);
        }
        base += width;
    }

    for (uint64_t n : rep.hits) {
        Factorization f = factorize(i128(n));
        bool composite = f.big_omega() >= 2;
        if (!composite || i128(n - 1) % beta(f) != 0)
            throw std::logic_error("hit " + std::to_string(n) + " failed re-verification");
    }
    rep.elapsed_sec = seconds_since(t0);
    return rep;
}

FermatChain fermat_chain_check(int k) {
    if (k < 1 || k > 6) throw std::invalid_argument("fermat_chain_check: k in [1, 6]");
    FermatChain chain;
    chain.k = k;
    chain.n_k = checked_pow(2, (1u << k) - 1);
    i128 product = 1;
    for (int m = 1; m < k; ++m) {
        i128 f = checked_add(checked_pow(2, 1u << m), 1);
        chain.fermat_factors.push_back(f);
        product = checked_mul(product, f);
    }
    chain.beta_n_k = beta(factorize(chain.n_k));
    chain.beta_beta_n_k = beta(factorize(chain.beta_n_k));
    chain.product_matches = (chain.beta_n_k == product);
    chain.super_imperfect = (checked_mul(2, chain.beta_beta_n_k) == chain.n_k);
    if (k <= 5) {
        chain.ok = chain.product_matches && chain.super_imperfect;
    } else {
        chain.ok = chain.product_matches && !chain.super_imperfect &&
                   checked_mul(2, chain.beta_beta_n_k) < chain.n_k;
    }
    return chain;
}

MkCheck mk_imperfect_check(int k) {
    if (k < 2 || k > 5) throw std::invalid_argument("mk_imperfect_check: k in [2, 5]");
    MkCheck check;
    check.k = k;
    check.m_k = checked_pow(2, (1u << k) - 1);
    for (int m = 1; m < k; ++m)
        check.m_k = checked_mul(check.m_k, checked_add(checked_pow(2, 1u << m), 1));
    check.beta_m_k = beta(factorize(check.m_k));
    check.imperfect = (checked_mul(2, check.beta_m_k) == check.m_k);
    return check;
}

std::optional<Checkpoint> load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        json j = json::parse(in);
        Checkpoint cp;
        cp.version = std::stoi(j.at("version").get<std::string>());
        if (cp.version != 1)
            throw checkpoint_error("unsupported checkpoint version in " + path);
        cp.kind = j.at("kind").get<std::string>();
        cp.m = std::stoi(j.at("m").get<std::string>());
        cp.k = std::stoull(j.at("k").get<std::string>());
        cp.lo = std::stoull(j.at("lo").get<std::string>());
        cp.high_water = std::stoull(j.at("high_water").get<std::string>());
        uint64_t prev = 0;
        for (const auto& h : j.at("hits")) {
            uint64_t n = std::stoull(h.get<std::string>());
            if (n <= prev || n > cp.high_water)
                throw checkpoint_error("inconsistent hit list in " + path);
            cp.hits.push_back(n);
            prev = n;
        }
        return cp;
    } catch (const checkpoint_error&) {
        throw;
    } catch (const std::exception& e) {
        throw checkpoint_error("corrupt checkpoint " + path + ": " + e.what());
    }
}

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
    json j;
    j["version"] = std::to_string(cp.version);
    j["kind"] = cp.kind;
    j["m"] = std::to_string(cp.m);
    j["k"] = std::to_string(cp.k);
    j["lo"] = std::to_string(cp.lo);
    j["high_water"] = std::to_string(cp.high_water);
    json hits = json::array();
    for (uint64_t n : cp.hits) hits.push_back(std::to_string(n));
    j["hits"] = std::move(hits);

    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump() << '\n';
        out.flush();
        if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace altsigma
