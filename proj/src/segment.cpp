#include "tw/segment.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "tw/error.hpp"

namespace tw {

namespace {

struct Identity {
    int seed = 0;        // first pixel, raster index
    int last_alive = 0;  // last level at which this identity owned its component
    bool discarded = false;
    std::vector<std::pair<int, std::int64_t>> snaps;  // (level, size), size changes only
};

struct Candidate {
    int ident;
    int level;
    std::int64_t size;
    double variation;
    int seed;
};

struct ClassRegion {
    std::int64_t pixel_count;
    int first_pixel;
    int min_row, min_col, max_row, max_col;
};

int find_root(std::vector<int>& parent, int x) {
    int root = x;
    while (parent[static_cast<size_t>(root)] != root) root = parent[static_cast<size_t>(root)];
    while (parent[static_cast<size_t>(x)] != root) {
        const int next = parent[static_cast<size_t>(x)];
        parent[static_cast<size_t>(x)] = root;
        x = next;
    }
    return root;
}

std::int64_t step_size(const std::vector<std::pair<int, std::int64_t>>& snaps, int level) {
    // Largest snapshot level <= level; callers clip into the lifetime.
    auto it = std::upper_bound(snaps.begin(), snaps.end(), level,
                               [](int l, const auto& s) { return l < s.first; });
    return (it == snaps.begin()) ? snaps.front().second : std::prev(it)->second;
}

/// Extremal-region analysis of one class: grow lower level sets with
/// union-find, track each surviving component identity's size history, then
/// keep the most stable snapshots. Selected regions are made disjoint by
/// greedy pixel claiming in (variation, -size, seed) order, so at equal
/// stability the outermost region wins.
std::vector<ClassRegion> analyze_class(int class_id, const std::vector<std::uint16_t>& levels,
                                       const std::vector<std::uint8_t>& labelmap, int width,
                                       int height, const MserParams& params) {
    const int n = width * height;
    std::vector<int> pixels;
    for (int i = 0; i < n; ++i)
        if (labelmap[static_cast<size_t>(i)] == class_id) pixels.push_back(i);
    if (pixels.empty()) return {};

    std::stable_sort(pixels.begin(), pixels.end(), [&](int a, int b) {
        return levels[static_cast<size_t>(a)] < levels[static_cast<size_t>(b)];
    });

    std::vector<int> parent(static_cast<size_t>(n), -1);
    std::vector<std::int64_t> comp_size(static_cast<size_t>(n), 0);
    std::vector<int> ident_of_root(static_cast<size_t>(n), -1);
    std::vector<Identity> idents;
    std::vector<int> live;

    auto remove_live = [&](int id) {
        auto it = std::find(live.begin(), live.end(), id);
        live.erase(it);
    };

    auto merge = [&](int a, int b) {
        int ra = find_root(parent, a);
        int rb = find_root(parent, b);
        if (ra == rb) return;
        const std::int64_t sa = comp_size[static_cast<size_t>(ra)];
        const std::int64_t sb = comp_size[static_cast<size_t>(rb)];
        const int ia = ident_of_root[static_cast<size_t>(ra)];
        const int ib = ident_of_root[static_cast<size_t>(rb)];
        int surv, lose;
        if (sa > sb || (sa == sb && idents[static_cast<size_t>(ia)].seed <
                                        idents[static_cast<size_t>(ib)].seed)) {
            surv = ia;
            lose = ib;
        } else {
            surv = ib;
            lose = ia;
        }
        const int rbig = sa >= sb ? ra : rb;
        const int rsmall = rbig == ra ? rb : ra;
        parent[static_cast<size_t>(rsmall)] = rbig;
        comp_size[static_cast<size_t>(rbig)] = sa + sb;
        ident_of_root[static_cast<size_t>(rbig)] = surv;
        idents[static_cast<size_t>(lose)].discarded =
            idents[static_cast<size_t>(lose)].snaps.empty();
        remove_live(lose);
    };

    size_t cursor = 0;
    while (cursor < pixels.size()) {
        const int level = levels[static_cast<size_t>(pixels[cursor])];
        for (; cursor < pixels.size() &&
               levels[static_cast<size_t>(pixels[cursor])] == level;
             ++cursor) {
            const int p = pixels[cursor];
            parent[static_cast<size_t>(p)] = p;
            comp_size[static_cast<size_t>(p)] = 1;
            ident_of_root[static_cast<size_t>(p)] = static_cast<int>(idents.size());
            live.push_back(static_cast<int>(idents.size()));
            idents.push_back(Identity{p, level - 1, false, {}});

            const int row = p / width;
            const int col = p % width;
            const int nb[4] = {col > 0 ? p - 1 : -1, row > 0 ? p - width : -1,
                               col + 1 < width ? p + 1 : -1, row + 1 < height ? p + width : -1};
            for (int q : nb)
                if (q >= 0 && parent[static_cast<size_t>(q)] != -1 &&
                    labelmap[static_cast<size_t>(q)] == class_id)
                    merge(p, q);
        }
        for (int id : live) {
            Identity& ident = idents[static_cast<size_t>(id)];
            const int root = find_root(parent, ident.seed);
            const std::int64_t s = comp_size[static_cast<size_t>(root)];
            ident.last_alive = level;
            if (ident.snaps.empty() || ident.snaps.back().second != s)
                ident.snaps.emplace_back(level, s);
        }
    }

    const auto max_area = static_cast<std::int64_t>(params.max_area_fraction *
                                                    static_cast<double>(n));
    std::vector<Candidate> candidates;
    for (size_t id = 0; id < idents.size(); ++id) {
        const Identity& ident = idents[id];
        if (ident.discarded || ident.snaps.empty()) continue;
        const int birth = ident.snaps.front().first;
        const int death = ident.last_alive;

        std::vector<double> vars(ident.snaps.size());
        for (size_t i = 0; i < ident.snaps.size(); ++i) {
            const auto [l, s] = ident.snaps[i];
            const int lo = std::max(l - params.delta, birth);
            const int hi = std::min(l + params.delta, death);
            vars[i] = static_cast<double>(step_size(ident.snaps, hi) -
                                          step_size(ident.snaps, lo)) /
                      static_cast<double>(s);
        }
        for (size_t i = 0; i < ident.snaps.size(); ++i) {
            if (i > 0 && vars[i] > vars[i - 1]) continue;
            if (i + 1 < vars.size() && vars[i] > vars[i + 1]) continue;
            if (vars[i] > params.max_variation) continue;
            const auto [l, s] = ident.snaps[i];
            if (s < params.min_area || s > max_area) continue;
            candidates.push_back(
                Candidate{static_cast<int>(id), l, s, vars[i], ident.seed});
        }
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.variation != b.variation) return a.variation < b.variation;
        if (a.size != b.size) return a.size > b.size;
        if (a.seed != b.seed) return a.seed < b.seed;
        return a.level < b.level;
    });

    std::vector<std::uint8_t> claimed(static_cast<size_t>(n), 0);
    std::vector<int> stamp(static_cast<size_t>(n), -1);
    std::vector<int> stack, members;
    std::vector<ClassRegion> regions;

    for (size_t c = 0; c < candidates.size(); ++c) {
        const Candidate& cand = candidates[c];
        members.clear();
        stack.assign(1, idents[static_cast<size_t>(cand.ident)].seed);
        stamp[static_cast<size_t>(stack[0])] = static_cast<int>(c);
        bool overlaps = false;
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            members.push_back(p);
            if (claimed[static_cast<size_t>(p)]) overlaps = true;
            const int row = p / width;
            const int col = p % width;
            const int nb[4] = {col > 0 ? p - 1 : -1, row > 0 ? p - width : -1,
                               col + 1 < width ? p + 1 : -1, row + 1 < height ? p + width : -1};
            for (int q : nb) {
                if (q < 0 || stamp[static_cast<size_t>(q)] == static_cast<int>(c)) continue;
                if (labelmap[static_cast<size_t>(q)] != class_id ||
                    levels[static_cast<size_t>(q)] > cand.level ||
                    parent[static_cast<size_t>(q)] == -1)
                    continue;
                stamp[static_cast<size_t>(q)] = static_cast<int>(c);
                stack.push_back(q);
            }
        }
        if (overlaps) continue;

        ClassRegion region;
        region.pixel_count = static_cast<std::int64_t>(members.size());
        region.first_pixel = *std::min_element(members.begin(), members.end());
        region.min_row = height;
        region.min_col = width;
        region.max_row = 0;
        region.max_col = 0;
        for (int p : members) {
            claimed[static_cast<size_t>(p)] = 1;
            const int row = p / width;
            const int col = p % width;
            region.min_row = std::min(region.min_row, row);
            region.min_col = std::min(region.min_col, col);
            region.max_row = std::max(region.max_row, row);
            region.max_col = std::max(region.max_col, col);
        }
        regions.push_back(region);
    }
    return regions;
}

}  // namespace

std::vector<SegmentedRegion> mser_regions(const ThermalFrame& frame,
                                          const QuantizationResult& quant,
                                          const MserParams& params, Exec exec) {
    if (quant.levels.size() != frame.pixel_count() || quant.labelmap.size() != frame.pixel_count())
        raise(Errc::dimension_mismatch, "quantization result does not belong to this frame");

    std::vector<std::uint16_t> levels(quant.levels.begin(), quant.levels.end());
    std::vector<std::uint8_t> labelmap(quant.labelmap.begin(), quant.labelmap.end());

    std::vector<std::vector<ClassRegion>> per_class(static_cast<size_t>(quant.n_classes));
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (int c = 0; c < quant.n_classes; ++c)
        per_class[static_cast<size_t>(c)] =
            analyze_class(c, levels, labelmap, frame.width, frame.height, params);

    std::vector<SegmentedRegion> out;
    for (int c = 0; c < quant.n_classes; ++c) {
        auto& regions = per_class[static_cast<size_t>(c)];
        std::sort(regions.begin(), regions.end(),
                  [](const ClassRegion& a, const ClassRegion& b) {
                      return a.first_pixel < b.first_pixel;
                  });
        for (size_t i = 0; i < regions.size(); ++i) {
            const ClassRegion& r = regions[i];
            out.push_back(SegmentedRegion{c, static_cast<int>(i), r.pixel_count, r.min_row,
                                          r.min_col, r.max_row, r.max_col});
        }
    }
    return out;
}

RegionSizeSample region_size_record(const std::vector<SegmentedRegion>& regions,
                                    Timestamp timestamp) {
    RegionSizeSample sample;
    sample.timestamp = timestamp;
    sample.sizes.reserve(regions.size());
    for (const SegmentedRegion& r : regions)
        sample.sizes.push_back(RegionSizeSample::Entry{r.class_id, r.region_id, r.pixel_count});
    std::sort(sample.sizes.begin(), sample.sizes.end(), [](const auto& a, const auto& b) {
        return std::pair(a.class_id, a.region_id) < std::pair(b.class_id, b.region_id);
    });
    return sample;
}

}  // namespace tw
