package com.minimart.order;

import org.springframework.data.repository.CrudRepository;

public interface OrderRepository extends CrudRepository<Product, Long> {
}
