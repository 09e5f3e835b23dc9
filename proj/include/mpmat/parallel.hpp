#pragma once

// Fork-join helpers with an explicit worker budget. A budget of 1 always runs
// on the calling thread, in order, so serial and parallel runs execute the
// same code.

#include <cstddef>
#include <functional>
#include <span>

namespace mpmat {

/// A section receives the share of the worker budget it may use internally.
using SectionTask = std::function<void(std::size_t worker_budget)>;

/// Runs independent sections to completion on at most `workers` threads.
/// With workers >= sections.size() each section runs on its own thread and
/// the surplus is split among them (earlier sections get the remainder).
/// With fewer workers, threads pull sections in index order and each section
/// gets a budget of 1. The first exception thrown by any section is rethrown
/// once every thread has joined.
void run_parallel_sections(std::span<const SectionTask> sections, std::size_t workers);

/// Splits [begin, end) into at most `workers` contiguous chunks and calls
/// body(chunk_begin, chunk_end) for each, concurrently.
void parallel_for(std::size_t begin, std::size_t end, std::size_t workers,
                  const std::function<void(std::size_t, std::size_t)>& body);

/// Share of `workers` given to section `index` of `count`.
std::size_t section_budget(std::size_t workers, std::size_t count, std::size_t index) noexcept;

}  // namespace mpmat
