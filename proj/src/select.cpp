#include "immx/select.hpp"

#include <algorithm>
#include <stdexcept>

#include <bit>

namespace immx {

Vertex table_argmax(const FrequencyTable& counts) {
    std::uint64_t best = 0;
    Vertex winner = 0;
    for (std::size_t v = 0; v < counts.size(); ++v) {
        if (counts[v] > best) {
            best = counts[v];
            winner = static_cast<Vertex>(v);
        }
    }
    return winner;
}

Vertex merged_argmax(const std::vector<FrequencyTable>& locals) {
    if (locals.empty()) throw std::invalid_argument("merged_argmax needs at least one table");

    std::vector<Vertex> winners;
    winners.reserve(locals.size());
    for (const FrequencyTable& t : locals) winners.push_back(table_argmax(t));
    std::sort(winners.begin(), winners.end());
    winners.erase(std::unique(winners.begin(), winners.end()), winners.end());

    // global frequencies for the local winners only (k*p reduction volume)
    Vertex best = winners.front();
    std::uint64_t best_count = 0;
    for (Vertex w : winners) {
        std::uint64_t total = 0;
        for (const FrequencyTable& t : locals) total += t[w];
        if (total > best_count || (total == best_count && w < best)) {
            best_count = total;
            best = w;
        }
    }
    return best;
}

namespace {

struct PickState {
    std::vector<bool> is_seed;
    Vertex pad_cursor = 0;

    explicit PickState(std::uint64_t n) : is_seed(n, false) {}

    Vertex next_pad() {
        while (is_seed[pad_cursor]) ++pad_cursor;
        return pad_cursor;
    }
};

int effective_workers(int workers) {
    return workers < 1 ? 1 : workers;
}

void sum_locals(const std::vector<FrequencyTable>& locals, FrequencyTable& global) {
    std::fill(global.begin(), global.end(), 0);
    for (const FrequencyTable& t : locals)
        for (std::size_t v = 0; v < global.size(); ++v) global[v] += t[v];
}

Vertex pick_vertex(const std::vector<FrequencyTable>& locals, const FrequencyTable& global,
                   const SelectOptions& opt) {
    if (opt.merged_argmax && locals.size() > 1) return merged_argmax(locals);
    return table_argmax(global);
}

void note_freq_bytes(const SelectOptions& opt, std::uint64_t n, int workers) {
    if (!opt.ledger) return;
    opt.ledger->freq_table_bytes = 8 * n * static_cast<std::uint64_t>(workers + 1);
    opt.ledger->checkpoint();
}

// chunk c of [0, total) when work is split over `parts` partitions
inline std::pair<std::uint64_t, std::uint64_t> chunk_range(std::uint64_t total, int parts,
                                                           int c) {
    return {total * c / parts, total * (c + 1) / parts};
}

}  // namespace

SeedSet select_raw(const std::vector<RrrBlock>& blocks, std::uint64_t n,
                   const SelectOptions& opt) {
    std::vector<const RrrSet*> sets;
    for (const RrrBlock& b : blocks)
        for (const RrrSet& r : b.sets) sets.push_back(&r);
    const std::uint64_t theta = sets.size();
    if (theta == 0) throw std::invalid_argument("selection requires at least one set");
    if (opt.k >= n) throw std::invalid_argument("selection requires k < n");

    const int workers = effective_workers(opt.workers);
    std::vector<std::uint8_t> covered(theta, 0);
    std::vector<FrequencyTable> locals(workers, FrequencyTable(n, 0));
    FrequencyTable global(n, 0);
    note_freq_bytes(opt, n, workers);

    SeedSet out;
    PickState state(n);
    std::uint64_t covered_total = 0;

    for (std::uint32_t round = 0; round < opt.k; ++round) {
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
        for (int c = 0; c < workers; ++c) {
            FrequencyTable& local = locals[c];
            std::fill(local.begin(), local.end(), 0);
            const auto [lo, hi] = chunk_range(theta, workers, c);
            for (std::uint64_t j = lo; j < hi; ++j) {
                if (covered[j]) continue;
                for (Vertex v : sets[j]->members) local[v]++;
            }
        }
        sum_locals(locals, global);

        Vertex pick = pick_vertex(locals, global, opt);
        std::uint64_t gain = global[pick];
        if (gain == 0) {
            pick = state.next_pad();
            out.padded++;
        } else {
            std::uint64_t newly = 0;
#pragma omp parallel for schedule(static) reduction(+ : newly) num_threads(workers) \
    if (workers > 1)
            for (std::int64_t j = 0; j < static_cast<std::int64_t>(theta); ++j) {
                if (covered[j]) continue;
                for (Vertex v : sets[j]->members) {
                    if (v == pick) {
                        covered[j] = 1;
                        newly++;
                        break;
                    }
                }
            }
            covered_total += newly;
        }
        state.is_seed[pick] = true;
        out.seeds.push_back(pick);
        out.marginal.push_back(gain);
        out.coverage.push_back(static_cast<double>(covered_total) / static_cast<double>(theta));
    }
    return out;
}

SeedSet select_huffman(const HuffmanCodebook& cb, std::vector<EncodedRrr>& encoded,
                       FrequencyTable hist, const SelectOptions& opt) {
    const std::uint64_t theta = encoded.size();
    const std::uint64_t n = hist.size();
    if (theta == 0) throw std::invalid_argument("selection requires at least one set");
    if (opt.k >= n) throw std::invalid_argument("selection requires k < n");

    const int workers = effective_workers(opt.workers);
    std::vector<std::uint8_t> deleted(theta, 0);
    std::vector<FrequencyTable> locals(workers, FrequencyTable(n, 0));
    std::vector<std::uint64_t> newly_per_chunk(workers, 0);
    std::vector<std::uint64_t> max_decoded_per_chunk(workers, 0);
    note_freq_bytes(opt, n, workers);

    SeedSet out;
    PickState state(n);
    std::uint64_t covered_total = 0;

    // the first pick comes from the table accumulated during encoding
    Vertex pick = table_argmax(hist);
    std::uint64_t gain = hist[pick];

    for (std::uint32_t round = 0; round < opt.k; ++round) {
        if (gain == 0) {
            pick = state.next_pad();
            out.padded++;
            state.is_seed[pick] = true;
            out.seeds.push_back(pick);
            out.marginal.push_back(0);
            out.coverage.push_back(static_cast<double>(covered_total) /
                                   static_cast<double>(theta));
            continue;
        }

        state.is_seed[pick] = true;
        out.seeds.push_back(pick);

#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
        for (int c = 0; c < workers; ++c) {
            FrequencyTable& local = locals[c];
            std::fill(local.begin(), local.end(), 0);
            newly_per_chunk[c] = 0;
            max_decoded_per_chunk[c] = 0;
            const auto [lo, hi] = chunk_range(theta, workers, c);
            for (std::uint64_t j = lo; j < hi; ++j) {
                if (deleted[j]) continue;
                DecodeResult res = decode_find(cb, encoded[j], pick);
                max_decoded_per_chunk[c] =
                    std::max<std::uint64_t>(max_decoded_per_chunk[c], res.decoded.size());
                if (res.found) {
                    deleted[j] = 1;
                    newly_per_chunk[c]++;
                } else {
                    for (Vertex v : res.decoded) local[v]++;
                    for (Vertex v : encoded[j].copied) local[v]++;
                }
                // res goes out of scope here, releasing the decode buffer
            }
        }
        std::uint64_t newly = 0, max_decoded = 0;
        for (int c = 0; c < workers; ++c) {
            newly += newly_per_chunk[c];
            max_decoded = std::max(max_decoded, max_decoded_per_chunk[c]);
        }
        covered_total += newly;
        out.marginal.push_back(gain);
        out.coverage.push_back(static_cast<double>(covered_total) / static_cast<double>(theta));

        if (opt.ledger) {
            opt.ledger->decode_buffer_bytes =
                std::max(opt.ledger->decode_buffer_bytes,
                         4 * max_decoded * static_cast<std::uint64_t>(workers));
            opt.ledger->checkpoint();
        }

        sum_locals(locals, hist);
        pick = pick_vertex(locals, hist, opt);
        gain = hist[pick];
    }
    return out;
}

FrequencyTable popcount_hist(const BitmapCollection& bm, int workers) {
    const std::uint64_t n = bm.n_rows;
    FrequencyTable hist(n, 0);
    workers = effective_workers(workers);
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v)
        hist[v] = popcount_row(bm, static_cast<Vertex>(v));
    return hist;
}

SeedSet select_bitmap(BitmapCollection& bm, FrequencyTable hist, const SelectOptions& opt) {
    const std::uint64_t n = bm.n_rows;
    const std::uint64_t theta = bm.total_cols();
    if (theta == 0) throw std::invalid_argument("selection requires at least one set");
    if (opt.k >= n) throw std::invalid_argument("selection requires k < n");

    const int workers = effective_workers(opt.workers);
    std::vector<std::uint8_t> deleted(n, 0);  // rows with no live columns left
    std::vector<FrequencyTable> locals(workers, FrequencyTable(n, 0));
    note_freq_bytes(opt, n, workers);

    // each worker owns a contiguous range of word-columns across the blocks
    struct Slice {
        std::size_t block;
        std::uint64_t word_begin;
        std::uint64_t word_end;
        std::uint64_t snap_base;  // words before this block in the snapshot
    };
    const std::uint64_t total_words = bm.total_words_per_row();
    std::vector<std::vector<Slice>> slices(workers);
    for (int c = 0; c < workers; ++c) {
        const auto [lo, hi] = chunk_range(total_words, workers, c);
        std::uint64_t base = 0;
        for (std::size_t b = 0; b < bm.blocks.size(); ++b) {
            const std::uint64_t wpr = bm.blocks[b].words_per_row();
            const std::uint64_t begin = std::max(lo, base), end = std::min(hi, base + wpr);
            if (begin < end) slices[c].push_back({b, begin - base, end - base, base});
            base += wpr;
        }
    }

    SeedSet out;
    PickState state(n);
    std::uint64_t covered_total = 0;

    Vertex pick = table_argmax(hist);
    std::uint64_t gain = hist[pick];

    for (std::uint32_t round = 0; round < opt.k; ++round) {
        if (gain == 0) {
            pick = state.next_pad();
            out.padded++;
            state.is_seed[pick] = true;
            out.seeds.push_back(pick);
            out.marginal.push_back(0);
            out.coverage.push_back(static_cast<double>(covered_total) /
                                   static_cast<double>(theta));
            continue;
        }

        state.is_seed[pick] = true;
        out.seeds.push_back(pick);
        covered_total += gain;
        out.marginal.push_back(gain);
        out.coverage.push_back(static_cast<double>(covered_total) / static_cast<double>(theta));

        // fixed snapshot so the update order over rows cannot matter
        const std::vector<std::uint32_t> snap = snapshot_row(bm, pick);

#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
        for (int c = 0; c < workers; ++c) {
            FrequencyTable& local = locals[c];
            std::fill(local.begin(), local.end(), 0);
            for (const Slice& s : slices[c]) {
                BitmapBlock& blk = bm.blocks[s.block];
                for (std::uint64_t v = 0; v < n; ++v) {
                    if (deleted[v]) continue;
                    std::uint32_t* row = blk.row(static_cast<Vertex>(v));
                    std::uint64_t pc = 0;
                    for (std::uint64_t j = s.word_begin; j < s.word_end; ++j) {
                        row[j] &= row[j] ^ snap[s.snap_base + j];
                        pc += std::popcount(row[j]);
                    }
                    local[v] += pc;
                }
            }
        }
        sum_locals(locals, hist);
        for (std::uint64_t v = 0; v < n; ++v)
            if (!deleted[v] && hist[v] == 0) deleted[v] = 1;

        if (opt.ledger) opt.ledger->checkpoint();

        pick = pick_vertex(locals, hist, opt);
        gain = hist[pick];
    }
    return out;
}

}  // namespace immx
