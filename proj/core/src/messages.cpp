#include "spender/messages.hpp"

#include <type_traits>

namespace spender {

std::string_view message_tag(const ExecuteMsg& msg) noexcept {
  return std::visit(
      [](const auto& m) -> std::string_view {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PostItem>) return "post_item";
        else if constexpr (std::is_same_v<T, ResetPrice>) return "reset_price";
        else if constexpr (std::is_same_v<T, Buy>) return "buy";
        else if constexpr (std::is_same_v<T, BidOrder>) return "bid_order";
        else if constexpr (std::is_same_v<T, ChooseBid>) return "choose_bid";
        else if constexpr (std::is_same_v<T, UploadAddress>) return "upload_address";
        else if constexpr (std::is_same_v<T, DiscardOrder>) return "discard_order";
        else if constexpr (std::is_same_v<T, Confirm>) return "confirm";
        else if constexpr (std::is_same_v<T, ItemLossBroken>) return "item_loss_broken";
        else if constexpr (std::is_same_v<T, ItemUnsatisfied>) return "item_unsatisfied";
        else if constexpr (std::is_same_v<T, ReturnConfirm>) return "return_confirm";
        else return "submit_review";
      },
      msg);
}

}  // namespace spender
