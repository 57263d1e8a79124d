package com.minimart.cart;

import java.util.HashMap;
import java.util.List;
import java.util.Map;
import org.springframework.http.HttpEntity;
import org.springframework.http.HttpMethod;
import org.springframework.http.ResponseEntity;
import org.springframework.stereotype.Service;
import org.springframework.web.client.RestTemplate;

@Service
public class CheckoutService {

    private final RestTemplate restTemplate;
    private final Map<String, CartItem> items = new HashMap<>();

    public CheckoutService(RestTemplate restTemplate) {
        this.restTemplate = restTemplate;
    }

    public List products() {
        ResponseEntity<List> r = restTemplate.getForEntity("http://mm-catalog-service:8080/api/v1/catalog/products", List.class);
        return r.getBody();
    }

    public String submit(CartItem item) {
        String url = "http://mm-order-service:8080/api/v1/orders";
        HttpEntity<CartItem> entity = new HttpEntity<>(item);
        // restTemplate.getForObject("http://mm-order-service:8080/api/v1/orders/legacy", String.class);
        return restTemplate.exchange(url, HttpMethod.POST, entity, String.class).getBody();
    }

    public Object owner(String userId) {
        return restTemplate.getForObject("http://mm-user-service:8080/api/v1/users/{id}", Object.class, userId);
    }

    public void clear(String cartId) {
        items.put("key", null);
        items.remove(cartId);
    }
}
