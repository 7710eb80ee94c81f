#include "cwcmatch/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cwcmatch/report.hpp"

namespace cwcmatch {

void SweepPlan::validate() const {
    if (d % 2 == 0) throw std::invalid_argument("even d unsupported by constructor");
    for (std::size_t i = 1; i < n_values.size(); ++i)
        if (n_values[i] <= n_values[i - 1]) throw std::invalid_argument("n values must be strictly increasing");
    if (seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
    config.validate();
}

CodeSpec SweepPlan::spec_for(int n) const {
    if (const auto* w = std::get_if<int>(&weight)) return CodeSpec::cwc(q, n, d, *w);
    return CodeSpec::ccc(q, n, d, std::get<Composition>(weight));
}

namespace {

struct Cell {
    std::size_t size = 0;
    double wall_time_ms = 0.0;
    std::optional<std::string> error;
};

Cell run_cell(const SweepPlan& plan, int n, std::uint64_t seed) {
    Cell cell;
    const auto start = std::chrono::steady_clock::now();
    try {
        MatchConfig config = plan.config;
        config.seed = seed;
        const Construction c = construct(plan.spec_for(n), config);
        if (!verify(c.code).ok()) {
            cell.error = "seed " + std::to_string(seed) + ": verification failed";
        } else {
            cell.size = c.code.size();
        }
    } catch (const std::exception& e) {
        cell.error = "seed " + std::to_string(seed) + ": " + e.what();
    }
    cell.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return cell;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepPlan& plan, unsigned threads) {
    plan.validate();
    const std::size_t seeds = plan.seeds.size();
    const std::size_t total = plan.n_values.size() * seeds;
    std::vector<Cell> cells(total);

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++)
            cells[i] = run_cell(plan, plan.n_values[i / seeds], plan.seeds[i % seeds]);
    };
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(total)));
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(worker);
    worker();
    pool.clear();

    std::vector<SweepRow> rows;
    for (std::size_t r = 0; r < plan.n_values.size(); ++r) {
        SweepRow row;
        row.n = plan.n_values[r];
        std::size_t ok = 0, sum = 0;
        for (std::size_t s = 0; s < seeds; ++s) {
            const Cell& cell = cells[r * seeds + s];
            row.sizes.push_back(cell.size);
            row.wall_time_ms += cell.wall_time_ms;
            if (cell.error) {
                if (!row.error) row.error = cell.error;
                continue;
            }
            ++ok;
            sum += cell.size;
            row.best_size = std::max(row.best_size, cell.size);
        }
        try {
            row.bound = upper_bound(plan.spec_for(row.n)).bound;
        } catch (const std::exception& e) {
            if (!row.error) row.error = e.what();
        }
        row.ratio = row.bound == 0 ? BigRational(0) : BigRational(BigCount(row.best_size), row.bound);
        row.mean_size = ok == 0 ? BigRational(0) : BigRational(BigCount(sum), BigCount(ok));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "n,bound,best_size,mean_size,ratio,ratio_decimal,sizes,error\n";
    for (const auto& row : rows) {
        out << row.n << ',' << row.bound << ',' << row.best_size << ',' << rational_string(row.mean_size) << ','
            << rational_string(row.ratio) << ',' << fixed_decimal(row.ratio) << ',';
        for (std::size_t i = 0; i < row.sizes.size(); ++i) out << (i ? ";" : "") << row.sizes[i];
        out << ',';
        if (row.error) {
            std::string e = *row.error;
            std::replace(e.begin(), e.end(), '"', '\'');
            out << '"' << e << '"';
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace cwcmatch
