package com.minimart.order;

import lombok.Data;

@Data
public class Product {
    private Long id;
    private String name;
}
