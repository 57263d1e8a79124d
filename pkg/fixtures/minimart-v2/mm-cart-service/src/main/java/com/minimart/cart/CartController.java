package com.minimart.cart;

import org.springframework.web.bind.annotation.*;

@RestController
@RequestMapping("/api/v1/cart")
public class CartController {

    private final CheckoutService checkout;

    public CartController(CheckoutService checkout) {
        this.checkout = checkout;
    }

    @DeleteMapping("/{cartId}")
    public void clear(@PathVariable String cartId) {
        checkout.clear(cartId);
    }
}
