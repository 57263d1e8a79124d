package com.minimart.catalog;

import java.util.List;
import org.springframework.web.bind.annotation.*;

@RestController
@RequestMapping("/api/v1/catalog")
public class ProductController {

    private final ProductRepository products;

    public ProductController(ProductRepository products) {
        this.products = products;
    }

    @GetMapping("/products")
    public List<Product> list() {
        return products.findAll();
    }

    @GetMapping(value = "/products/{id}")
    public Product get(@PathVariable Long id) {
        return products.findById(id).orElse(null);
    }
}
