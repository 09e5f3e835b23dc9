#include <mpmat/parallel.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mpmat {

namespace {

class FirstError {
public:
    void capture() noexcept
    {
        std::lock_guard lock(mutex_);
        if (!error_) {
            error_ = std::current_exception();
        }
    }

    void rethrow_if_any() const
    {
        if (error_) {
            std::rethrow_exception(error_);
        }
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
};

}  // namespace

std::size_t section_budget(std::size_t workers, std::size_t count, std::size_t index) noexcept
{
    if (count == 0 || workers <= count) {
        return 1;
    }
    return workers / count + (index < workers % count ? 1 : 0);
}

void run_parallel_sections(std::span<const SectionTask> sections, std::size_t workers)
{
    const std::size_t count = sections.size();
    if (count == 0) {
        return;
    }
    workers = std::max<std::size_t>(workers, 1);
    if (workers == 1 || count == 1) {
        for (const auto& section : sections) {
            section(workers);
        }
        return;
    }

    FirstError error;
    if (workers >= count) {
        std::vector<std::jthread> threads;
        threads.reserve(count - 1);
        for (std::size_t i = 1; i < count; ++i) {
            threads.emplace_back([&, i] {
                try {
                    sections[i](section_budget(workers, count, i));
                } catch (...) {
                    error.capture();
                }
            });
        }
        try {
            sections[0](section_budget(workers, count, 0));
        } catch (...) {
            error.capture();
        }
        threads.clear();
        error.rethrow_if_any();
        return;
    }

    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                sections[i](1);
            } catch (...) {
                error.capture();
            }
        }
    };
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers - 1);
        for (std::size_t t = 1; t < workers; ++t) {
            threads.emplace_back(drain);
        }
        drain();
    }
    error.rethrow_if_any();
}

void parallel_for(std::size_t begin, std::size_t end, std::size_t workers,
                  const std::function<void(std::size_t, std::size_t)>& body)
{
    if (end <= begin) {
        return;
    }
    const std::size_t total = end - begin;
    const std::size_t chunks = std::clamp<std::size_t>(workers, 1, total);
    if (chunks == 1) {
        body(begin, end);
        return;
    }
    std::vector<SectionTask> sections;
    sections.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = begin + total * c / chunks;
        const std::size_t hi = begin + total * (c + 1) / chunks;
        sections.emplace_back([&body, lo, hi](std::size_t) { body(lo, hi); });
    }
    run_parallel_sections(sections, chunks);
}

}  // namespace mpmat
