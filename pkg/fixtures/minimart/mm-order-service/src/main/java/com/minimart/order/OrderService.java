package com.minimart.order;

import java.util.Map;
import java.util.HashMap;
import lombok.Data;
import org.springframework.stereotype.Service;
import org.springframework.web.client.RestTemplate;

@Service
@Data
public class OrderService {

    private static final String USER_URL = "http://mm-user-service:8080/api/v1/users/";

    private final RestTemplate restTemplate;
    private final Map<String, String> cache = new HashMap<>();

    public String describe(String orderId) {
        return cache.getOrDefault(orderId, "unknown");
    }

    public String place(String body) {
        cache.put("last", body);
        return body;
    }

    public ProductDto product(Long productId) {
        return restTemplate.getForObject("http://mm-catalog-service:8080/api/v1/catalog/products/" + productId, ProductDto.class);
    }

    public UserDto owner(String userId) {
        return restTemplate.getForObject(USER_URL + userId, UserDto.class);
    }

    public String peerInfo(String service) {
        // both catalog and user expose GET /api/v1/info
        return restTemplate.getForObject(baseUrl(service) + "/api/v1/info", String.class);
    }

    private String baseUrl(String service) {
        return "http://" + service + ":8080";
    }
}
