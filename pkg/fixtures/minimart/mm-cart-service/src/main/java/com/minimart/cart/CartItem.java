package com.minimart.cart;

import lombok.Data;

@Data
public class CartItem {
    private Long productId;
    private Integer quantity;

    public static class Line {
        private String note;
    }
}
