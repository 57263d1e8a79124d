package com.minimart.user;

import org.springframework.stereotype.Service;
import org.springframework.web.client.RestTemplate;

@Service
public class AccountService {

    private final RestTemplate restTemplate = new RestTemplate();

    public UserDto find(String userId) {
        return new UserDto();
    }

    public UserDto create(UserDto body) {
        return body;
    }

    public Object[] recommendations() {
        return restTemplate.getForObject("http://mm-catalog-service:8080/api/v1/catalog/products", Object[].class);
    }

    /* The cart location is configured elsewhere, so the URL is opaque here. */
    public void dropCart(String cartUrl) {
        restTemplate.delete(cartUrl);
    }
}
