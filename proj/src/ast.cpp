#include "mfmod/ast.hpp"

namespace mfmod {

const DataItem* Program::find_item(const std::string& name) const {
    for (const auto& item : data_items) {
        if (item.name == name)
            return &item;
    }
    return nullptr;
}

const Paragraph* Program::find_paragraph(const std::string& name) const {
    for (const auto& para : paragraphs) {
        if (para.name == name)
            return &para;
    }
    return nullptr;
}

} // namespace mfmod
