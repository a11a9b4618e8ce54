#include "mfmod/testgen.hpp"

#include <algorithm>
#include <random>

#include "mfmod/decimal.hpp"

namespace mfmod {

namespace {

// Expansion caps. Surplus inputs are harmless (both interpreters consume
// the same prefix) and a shortfall exhausts both sides identically, so the
// caps only bound memory, not correctness.
constexpr std::size_t kMaxSites = 4096;
constexpr std::int64_t kTimesCap = 1000;
constexpr std::int64_t kLoopCap = 16;

class SiteCollector {
  public:
    explicit SiteCollector(const Program& program) : program_(program) {}

    std::vector<PictureSpec> collect() {
        for (const auto& paragraph : program_.paragraphs) {
            walk(paragraph.statements);
        }
        return std::move(sites_);
    }

  private:
    void walk(const std::vector<Stmt>& stmts) {
        for (const auto& stmt : stmts) {
            if (sites_.size() >= kMaxSites) {
                return;
            }
            walk_stmt(stmt);
        }
    }

    void walk_stmt(const Stmt& stmt) {
        if (const auto* accept = std::get_if<AcceptStmt>(&stmt.node)) {
            if (const DataItem* item = program_.find_item(accept->target)) {
                sites_.push_back(item->picture);
            }
            return;
        }
        if (const auto* branch = std::get_if<IfStmt>(&stmt.node)) {
            // Both branches contribute sites: only one executes per case,
            // so one set of inputs goes unread, which is fine.
            walk(branch->then_branch);
            walk(branch->else_branch);
            return;
        }
        if (const auto* perform = std::get_if<PerformStmt>(&stmt.node)) {
            walk_perform(*perform);
            return;
        }
    }

    void walk_perform(const PerformStmt& perform) {
        const Paragraph* target = program_.find_paragraph(perform.target);
        if (target == nullptr || depth_ > 64) {
            return;
        }
        std::int64_t repeat = 1;
        if (perform.kind == PerformKind::times) {
            repeat = kLoopCap;
            if (const auto* lit = std::get_if<DecimalLit>(&perform.count->node)) {
                const BigInt floored =
                    Rational::from_decimal(lit->value).mantissa_at_scale(0);
                repeat = std::clamp<std::int64_t>(
                    static_cast<std::int64_t>(floored), 0, kTimesCap);
            }
        } else if (perform.kind == PerformKind::until) {
            repeat = kLoopCap;
        }
        ++depth_;
        for (std::int64_t i = 0; i < repeat && sites_.size() < kMaxSites; ++i) {
            walk(target->statements);
        }
        --depth_;
    }

    const Program& program_;
    std::vector<PictureSpec> sites_;
    int depth_ = 0;
};

std::vector<std::string> boundary_pool(const PictureSpec& picture) {
    if (picture.kind == PictureKind::alphanumeric) {
        return {"", std::string(static_cast<std::size_t>(picture.width), 'A'), "Z"};
    }
    const std::string max_text =
        canonical_decimal_text(Decimal{picture.max_mantissa(), picture.digits_after});
    std::vector<std::string> pool = {"0", max_text};
    if (picture.is_signed) {
        pool.push_back("-" + max_text);
    }
    return pool;
}

std::string random_value(const PictureSpec& picture, std::mt19937_64& engine) {
    if (picture.kind == PictureKind::alphanumeric) {
        const std::size_t length =
            engine() % (static_cast<std::size_t>(picture.width) + 1);
        std::string text(length, ' ');
        for (auto& ch : text) {
            ch = static_cast<char>('A' + engine() % 26);
        }
        return text;
    }
    const std::uint64_t span = static_cast<std::uint64_t>(picture.max_mantissa()) + 1;
    auto mantissa = static_cast<std::int64_t>(engine() % span);
    if (picture.is_signed && engine() % 2 == 1) {
        mantissa = -mantissa;
    }
    return canonical_decimal_text(Decimal{mantissa, picture.digits_after});
}

} // namespace

std::vector<TestCase> generate_tests(const Program& program, std::size_t count,
                                     std::uint64_t seed) {
    const std::vector<PictureSpec> sites = SiteCollector(program).collect();
    std::vector<std::vector<std::string>> pools;
    pools.reserve(sites.size());
    for (const auto& site : sites) {
        pools.push_back(boundary_pool(site));
    }

    std::mt19937_64 engine(seed);
    std::vector<TestCase> cases;
    cases.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        TestCase test;
        test.id = i;
        test.inputs.reserve(sites.size());
        for (std::size_t j = 0; j < sites.size(); ++j) {
            if (i < pools[j].size()) {
                test.inputs.push_back(pools[j][i]);
            } else {
                test.inputs.push_back(random_value(sites[j], engine));
            }
        }
        cases.push_back(std::move(test));
    }
    return cases;
}

} // namespace mfmod
