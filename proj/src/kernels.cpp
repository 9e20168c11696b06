#include "lattes/kernels.hpp"

#include <deque>
#include <set>

namespace lattes::kernels {

using pillow::Idx;
using pillow::Side;

pillow::CellCounts count_cells_serial(const Level& level)
{
    std::set<pillow::TileIndex> tiles;
    std::set<pillow::EdgeIndex> edges;
    std::set<pillow::VertexIndex> vertices;
    for (std::int64_t i = 0; i < level.box_width(); ++i)
        for (std::int64_t j = 0; j < level.box_height(); ++j) {
            tiles.insert(level.canonical_tile({i, j}));
            vertices.insert(level.canonical_vertex({i, j}));
            edges.insert(level.canonical_edge({i, j}, Side::bottom));
            edges.insert(level.canonical_edge({i, j}, Side::left));
        }
    return {vertices.size(), edges.size(), tiles.size()};
}

pillow::CellCounts count_cells_parallel(const Level& level)
{
    const std::int64_t width = level.box_width();
    const std::int64_t height = level.box_height();
    std::uint64_t v = 0, e = 0, t = 0;
#pragma omp parallel for reduction(+ : v, e, t) schedule(static)
    for (std::int64_t i = 0; i < width; ++i)
        for (std::int64_t j = 0; j < height; ++j) {
            Idx r{i, j};
            if (level.canonical_tile(r).coords == r)
                ++t;
            if (level.canonical_vertex(r).coords == r)
                ++v;
            if (level.canonical_edge(r, Side::bottom).coords == r)
                ++e;
            if (level.canonical_edge(r, Side::left).coords == r)
                ++e;
        }
    return {v, e, t};
}

namespace {

template <typename Stop>
std::uint32_t bfs(const Level& level, std::span<const TileIndex> sources, std::vector<std::uint32_t>& dist, Stop stop)
{
    dist.assign(level.box_cells(), unreached);
    std::deque<Idx> queue;
    for (const TileIndex& s : sources) {
        TileIndex c = level.canonical_tile(s.coords);
        auto id = level.cell_id(c.coords);
        if (dist[id] != unreached)
            continue;
        dist[id] = 1;
        if (stop(id))
            return 1;
        queue.push_back(c.coords);
    }
    while (!queue.empty()) {
        Idx cur = queue.front();
        queue.pop_front();
        std::uint32_t next = dist[level.cell_id(cur)] + 1;
        for (std::int64_t di = -1; di <= 1; ++di)
            for (std::int64_t dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0)
                    continue;
                Idx nb = level.canonical_tile({cur.i + di, cur.j + dj}).coords;
                auto id = level.cell_id(nb);
                if (dist[id] != unreached)
                    continue;
                dist[id] = next;
                if (stop(id))
                    return next;
                queue.push_back(nb);
            }
    }
    return 0;
}

} // namespace

std::vector<std::uint32_t> chain_field(const Level& level, std::span<const TileIndex> sources)
{
    std::vector<std::uint32_t> dist;
    bfs(level, sources, dist, [](std::uint64_t) { return false; });
    return dist;
}

std::uint32_t chain_distance(const Level& level, std::span<const TileIndex> sources,
                             std::span<const TileIndex> targets)
{
    std::vector<std::uint8_t> is_target(level.box_cells(), 0);
    for (const TileIndex& t : targets)
        is_target[level.cell_id(level.canonical_tile(t.coords).coords)] = 1;
    std::vector<std::uint32_t> dist;
    return bfs(level, sources, dist, [&](std::uint64_t id) { return is_target[id] != 0; });
}

std::vector<std::vector<std::uint32_t>> chain_fields(const Level& level,
                                                     const std::vector<std::vector<TileIndex>>& source_sets,
                                                     Exec exec)
{
    std::vector<std::vector<std::uint32_t>> out(source_sets.size());
    const auto count = static_cast<std::int64_t>(source_sets.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t k = 0; k < count; ++k)
            out[static_cast<std::size_t>(k)] = chain_field(level, source_sets[static_cast<std::size_t>(k)]);
    } else {
        for (std::int64_t k = 0; k < count; ++k)
            out[static_cast<std::size_t>(k)] = chain_field(level, source_sets[static_cast<std::size_t>(k)]);
    }
    return out;
}

namespace {

std::vector<std::uint32_t> distance_row(const Level& level, const std::vector<std::vector<TileIndex>>& sets,
                                        std::size_t row)
{
    std::vector<std::uint32_t> field = chain_field(level, sets[row]);
    std::vector<std::uint32_t> out(sets.size(), unreached);
    for (std::size_t col = 0; col < sets.size(); ++col)
        for (const TileIndex& t : sets[col]) {
            std::uint32_t d = field[level.cell_id(level.canonical_tile(t.coords).coords)];
            if (d != unreached && (out[col] == unreached || d < out[col]))
                out[col] = d;
        }
    return out;
}

} // namespace

std::vector<std::vector<std::uint32_t>> chain_distance_matrix(const Level& level,
                                                              const std::vector<std::vector<TileIndex>>& source_sets,
                                                              Exec exec)
{
    std::vector<std::vector<std::uint32_t>> out(source_sets.size());
    const auto count = static_cast<std::int64_t>(source_sets.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t k = 0; k < count; ++k)
            out[static_cast<std::size_t>(k)] = distance_row(level, source_sets, static_cast<std::size_t>(k));
    } else {
        for (std::int64_t k = 0; k < count; ++k)
            out[static_cast<std::size_t>(k)] = distance_row(level, source_sets, static_cast<std::size_t>(k));
    }
    return out;
}

} // namespace lattes::kernels
